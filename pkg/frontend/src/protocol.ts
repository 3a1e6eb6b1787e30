// Wire protocol (protocolVersion 1): zod schemas for every server frame.
// Invalid frames are logged and dropped by the caller; parsing never throws.

import { z } from "zod";

export const WaypointSchema = z.object({
  id: z.string(),
  x: z.number().int(),
  y: z.number().int(),
});

export const MapSchema = z.object({
  width: z.number().int().min(3),
  height: z.number().int().min(3),
  rows: z.array(z.string()),
  waypoints: z.array(WaypointSchema),
  edges: z.array(z.tuple([z.string(), z.string()])),
  items: z.array(
    z.object({ id: z.string(), kind: z.string(), waypoint: z.string() }),
  ),
});

export const ConfigFrameSchema = z.object({
  type: z.literal("config"),
  map: MapSchema,
  tickMs: z.number().positive(),
  protocolVersion: z.literal(1),
});

const AgentSchema = z.object({
  cell: z.tuple([z.number().int(), z.number().int()]),
  facing: z.enum(["N", "E", "S", "W"]),
  health: z.number().int().min(0).max(100),
  tier: z.number().int().min(0).max(3),
});

export const StateFrameSchema = z.object({
  type: z.literal("state"),
  tick: z.number().int().min(0),
  bot: AgentSchema,
  enemy: AgentSchema,
  items: z.array(z.object({ id: z.string(), available: z.boolean() })),
  mode: z.enum(["planning_hiding", "executing", "reacting"]),
  plan: z.array(z.object({ t: z.number().int(), action: z.string() })),
  currentStep: z.number().int().nullable(),
  lastPreemption: z
    .object({
      tick: z.number().int(),
      step: z.number().int().nullable(),
      emergency: z.string(),
      action: z.string(),
    })
    .nullable(),
});

export const EndFrameSchema = z.object({
  type: z.literal("end"),
  outcome: z.enum(["bot_win", "enemy_win", "timeout"]),
});

export const ErrorFrameSchema = z.object({
  type: z.literal("error"),
  reason: z.string(),
});

export const ServerFrameSchema = z.discriminatedUnion("type", [
  ConfigFrameSchema,
  StateFrameSchema,
  EndFrameSchema,
  ErrorFrameSchema,
]);

export type ConfigFrame = z.infer<typeof ConfigFrameSchema>;
export type StateFrame = z.infer<typeof StateFrameSchema>;
export type EndFrame = z.infer<typeof EndFrameSchema>;
export type ErrorFrame = z.infer<typeof ErrorFrameSchema>;
export type ServerFrame = z.infer<typeof ServerFrameSchema>;

export interface InputFrame {
  type: "input";
  keys: string[];
}

/** Parse one inbound text frame; null (plus a console warning) on garbage. */
export function parseServerFrame(text: string): ServerFrame | null {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch {
    console.warn("duel-ui: dropping non-JSON frame", text.slice(0, 80));
    return null;
  }
  const result = ServerFrameSchema.safeParse(raw);
  if (!result.success) {
    console.warn("duel-ui: dropping invalid frame", result.error.issues[0]);
    return null;
  }
  return result.data;
}
