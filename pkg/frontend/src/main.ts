import { ApiClient } from "./api.js";
import { App } from "./app.js";

const mount = document.getElementById("app");
if (mount) {
  const app = new App(mount, new ApiClient(""));
  void app.init();
}
