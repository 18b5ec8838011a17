// Browser entry point: mount the app onto the page shell.

import { mountApp } from "./app.js";

mountApp(document.getElementById("app")!);
