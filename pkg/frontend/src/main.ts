import { DuelClient } from "./client.js";

const params = new URLSearchParams(window.location.search);
const server = params.get("server") ?? window.location.host;

const canvas = document.getElementById("arena") as HTMLCanvasElement;
const panel = document.getElementById("panel") as HTMLElement;

new DuelClient({ serverAddress: server, canvas, panel }).start();
