import { ConsoleApp } from "./app.js";

const SERVICE_URL =
  new URLSearchParams(window.location.search).get("service") ??
  "http://127.0.0.1:8000";

new ConsoleApp(document.getElementById("app")!, SERVICE_URL);
