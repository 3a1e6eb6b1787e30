// Canvas painter: draws a Scene. Kept thin; all decisions live in scene.ts.

import type { Scene, Sprite } from "./scene.js";

export const CELL_PX = 36;

const COLORS: Record<Sprite["kind"], string> = {
  wall: "#2b2b33",
  floor: "#dcd9d0",
  waypoint: "#8a8fa8",
  item: "#2f9e44",
  bot: "#1c7ed6",
  enemy: "#e03131",
};

const FACING_OFFSETS: Record<string, [number, number]> = {
  N: [0, -0.35],
  S: [0, 0.35],
  E: [0.35, 0],
  W: [-0.35, 0],
};

export function paint(scene: Scene, ctx: CanvasRenderingContext2D): void {
  ctx.canvas.width = Math.max(1, scene.gridWidth) * CELL_PX;
  ctx.canvas.height = Math.max(1, scene.gridHeight) * CELL_PX;
  ctx.clearRect(0, 0, ctx.canvas.width, ctx.canvas.height);
  for (const sprite of scene.sprites) {
    drawSprite(ctx, sprite);
  }
  if (scene.banner !== null) {
    ctx.fillStyle = "rgba(0,0,0,0.65)";
    ctx.fillRect(0, ctx.canvas.height / 2 - 22, ctx.canvas.width, 44);
    ctx.fillStyle = "#fff";
    ctx.font = "16px monospace";
    ctx.textAlign = "center";
    ctx.fillText(scene.banner, ctx.canvas.width / 2, ctx.canvas.height / 2 + 5);
    ctx.textAlign = "start";
  }
}

function drawSprite(ctx: CanvasRenderingContext2D, sprite: Sprite): void {
  const px = sprite.x * CELL_PX;
  const py = sprite.y * CELL_PX;
  const mid = CELL_PX / 2;
  ctx.globalAlpha = sprite.dimmed ? 0.25 : 1.0;
  switch (sprite.kind) {
    case "wall":
    case "floor":
      ctx.fillStyle = COLORS[sprite.kind];
      ctx.fillRect(px, py, CELL_PX, CELL_PX);
      break;
    case "waypoint":
      ctx.strokeStyle = COLORS.waypoint;
      ctx.strokeRect(px + 4, py + 4, CELL_PX - 8, CELL_PX - 8);
      if (sprite.label) {
        ctx.fillStyle = COLORS.waypoint;
        ctx.font = "9px monospace";
        ctx.fillText(sprite.label, px + 5, py + 12);
      }
      break;
    case "item":
      ctx.fillStyle = COLORS.item;
      ctx.beginPath();
      ctx.arc(px + mid, py + mid, CELL_PX / 5, 0, Math.PI * 2);
      ctx.fill();
      break;
    case "bot":
    case "enemy": {
      ctx.fillStyle = COLORS[sprite.kind];
      ctx.beginPath();
      ctx.arc(px + mid, py + mid, CELL_PX / 3, 0, Math.PI * 2);
      ctx.fill();
      const offset = FACING_OFFSETS[sprite.facing ?? "N"];
      ctx.strokeStyle = "#111";
      ctx.lineWidth = 3;
      ctx.beginPath();
      ctx.moveTo(px + mid, py + mid);
      ctx.lineTo(px + mid + offset[0] * CELL_PX, py + mid + offset[1] * CELL_PX);
      ctx.stroke();
      ctx.lineWidth = 1;
      if (sprite.healthFraction !== undefined) {
        ctx.fillStyle = "#111";
        ctx.fillRect(px + 4, py + CELL_PX - 6, CELL_PX - 8, 3);
        ctx.fillStyle = "#51cf66";
        ctx.fillRect(px + 4, py + CELL_PX - 6, (CELL_PX - 8) * sprite.healthFraction, 3);
      }
      break;
    }
  }
  ctx.globalAlpha = 1.0;
}

export function paintPanel(lines: string[], element: HTMLElement): void {
  element.textContent = lines.join("\n");
}
