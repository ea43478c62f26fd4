import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "happy-dom",
    globalSetup: ["tests/service.setup.ts"],
    testTimeout: 30_000,
    hookTimeout: 60_000,
    // both test files talk to one shared service; keep them off each
    // other's contexts by name prefix, not by isolation machinery
    fileParallelism: false,
  },
});
