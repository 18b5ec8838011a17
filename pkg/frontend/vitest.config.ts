import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    include: ["tests/**/*.test.ts"],
    // Each suite boots its own Python service; give startup some slack.
    testTimeout: 30_000,
    hookTimeout: 60_000,
  },
});
