// Shared fixtures: the nine-planets context and its witnessed rules.

import { JsonTable } from "../src/api.js";

/**
 * Deployed pages are served by the service itself, so requests are
 * same-origin.  Point the test window at the service to match.
 */
export function adoptServiceOrigin(base: string): void {
  const controller = (globalThis as {
    happyDOM?: { setURL(url: string): void };
  }).happyDOM;
  controller?.setURL(base);
}

export const PLANET_OBJECTS = [
  "Mercury (Me)", "Venus (V)", "Earth (E)", "Mars (Ma)", "Jupiter (J)",
  "Saturn (S)", "Uranus (U)", "Neptune (N)", "Pluto (P)",
];

export const PLANET_ATTRIBUTES = [
  "small", "medium", "large", "near sun", "far from sun", "moon", "no moon",
];

const ROWS = [
  "X..X..X", "X..X..X", "X..X.X.", "X..X.X.", "..X.XX.",
  "..X.XX.", ".X..XX.", ".X..XX.", "X...XX.",
];

export function planetsTable(): JsonTable {
  return {
    objects: [...PLANET_OBJECTS],
    attributes: [...PLANET_ATTRIBUTES],
    incidence: ROWS.map(row => [...row].map(ch => ch === "X")),
  };
}

export const PLANETS_RULES = [
  "1 < 2 > medium ==> far from sun, moon;",
  "2 < 2 > large ==> far from sun, moon;",
  "3 < 4 > near sun ==> small;",
  "4 < 5 > far from sun ==> moon;",
  "5 < 2 > no moon ==> near sun, small;",
];
