// Pure view -> scene translation. Everything the canvas painter draws is
// described here as plain data, so rendering is testable without a DOM.

import type { ViewModel } from "./viewmodel.js";

export interface Sprite {
  kind: "wall" | "floor" | "waypoint" | "item" | "bot" | "enemy";
  x: number;
  y: number;
  label?: string;
  facing?: string;
  dimmed?: boolean;
  healthFraction?: number;
}

export interface Scene {
  gridWidth: number;
  gridHeight: number;
  sprites: Sprite[];
  panel: string[];
  banner: string | null;
}

const MODE_LABELS: Record<string, string> = {
  planning_hiding: "planning (hiding)",
  executing: "executing",
  reacting: "reacting",
};

export function buildPanel(view: ViewModel): string[] {
  const lines: string[] = [];
  const state = view.state;
  if (state === null) {
    lines.push("waiting for first state frame");
    return lines;
  }
  lines.push(`tick ${state.tick}`);
  lines.push(`mode: ${MODE_LABELS[state.mode] ?? state.mode}`);
  lines.push(
    `bot: hp ${state.bot.health} tier ${state.bot.tier} | ` +
      `enemy: hp ${state.enemy.health} tier ${state.enemy.tier}`,
  );
  lines.push("plan:");
  if (state.plan.length === 0) {
    lines.push("  (none)");
  } else {
    for (const step of state.plan) {
      const marker = state.currentStep === step.t ? ">" : " ";
      lines.push(` ${marker}${step.t}: ${step.action}`);
    }
  }
  const pre = state.lastPreemption;
  if (pre === null) {
    lines.push("last pre-emption: none");
  } else {
    const where = pre.step === null ? "fallback" : `step ${pre.step}`;
    lines.push(`last pre-emption: ${pre.emergency} @ ${where} -> ${pre.action}`);
  }
  if (view.end !== null) {
    lines.push(`match over: ${view.end.outcome}`);
  }
  return lines;
}

export function buildScene(view: ViewModel): Scene {
  const config = view.config;
  if (config === null) {
    return {
      gridWidth: 0,
      gridHeight: 0,
      sprites: [],
      panel: ["connecting..."],
      banner: view.connection === "closed" ? "connection lost" : null,
    };
  }
  const sprites: Sprite[] = [];
  config.map.rows.forEach((row, y) => {
    for (let x = 0; x < row.length; x++) {
      sprites.push({ kind: row[x] === "#" ? "wall" : "floor", x, y });
    }
  });
  for (const wp of config.map.waypoints) {
    sprites.push({ kind: "waypoint", x: wp.x, y: wp.y, label: wp.id });
  }
  const state = view.state;
  const waypointById = new Map(config.map.waypoints.map((w) => [w.id, w]));
  const availability = new Map(
    (state?.items ?? []).map((item) => [item.id, item.available]),
  );
  for (const item of config.map.items) {
    const wp = waypointById.get(item.waypoint);
    if (wp === undefined) continue;
    sprites.push({
      kind: "item",
      x: wp.x,
      y: wp.y,
      label: item.kind,
      dimmed: availability.get(item.id) === false,
    });
  }
  if (state !== null) {
    sprites.push({
      kind: "bot",
      x: state.bot.cell[0],
      y: state.bot.cell[1],
      facing: state.bot.facing,
      healthFraction: state.bot.health / 100,
    });
    sprites.push({
      kind: "enemy",
      x: state.enemy.cell[0],
      y: state.enemy.cell[1],
      facing: state.enemy.facing,
      healthFraction: state.enemy.health / 100,
    });
  }
  return {
    gridWidth: config.map.width,
    gridHeight: config.map.height,
    sprites,
    panel: buildPanel(view),
    banner: view.connection === "closed" ? "connection lost" : null,
  };
}
