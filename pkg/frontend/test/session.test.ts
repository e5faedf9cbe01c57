import { describe, expect, it } from "vitest";

import type { EndMessage, EpisodeLogWire } from "../src/protocol.js";
import { aggregateSessions, logToJsonl, summarizeEnd } from "../src/session.js";

function end(score: number, replay = "exact"): EndMessage {
  return {
    t: "end", score, fortress_deaths: Math.max(0, Math.round(score / 100)),
    ship_deaths: 0, missiles: 0, replay,
    log: { header: {}, frames: [] },
  };
}

describe("logToJsonl", () => {
  it("round-trips header and frames as one object per line", () => {
    const log: EpisodeLogWire = {
      header: { version: "autoturn", seed: 7, scheme: "sparse",
                config_digest: "abc" },
      frames: [
        [1, 0, 0.0, [], 0],
        [2, 1, -0.05, ["fire"], -2],
      ],
    };
    const text = logToJsonl(log);
    const lines = text.trimEnd().split("\n");
    expect(lines).toHaveLength(3);
    expect(JSON.parse(lines[0]!)).toEqual(log.header);
    expect(JSON.parse(lines[2]!)).toEqual(
      { f: 2, a: 1, r: -0.05, ev: ["fire"], score: -2 });
    expect(text.endsWith("\n")).toBe(true);
  });

  it("preserves float values exactly through JSON", () => {
    const r = -0.050000000000000003;
    const text = logToJsonl({ header: {}, frames: [[1, 1, r, [], -2]] });
    const parsed = JSON.parse(text.trimEnd().split("\n")[1]!);
    expect(Object.is(parsed.r, r)).toBe(true);
  });
});

describe("aggregateSessions", () => {
  it("reports best and last-K averages over completed sessions", () => {
    const sessions = Array.from({ length: 20 }, (_, i) =>
      summarizeEnd(end((i + 1) * 100)));
    const agg = aggregateSessions(sessions);
    expect(agg.sessions).toBe(20);
    const score = agg.rows[0]!;
    expect(score.metric).toBe("Score");
    expect(score.best).toBe(2000);
    expect(score.last5).toBe((1600 + 1700 + 1800 + 1900 + 2000) / 5);
    expect(score.last10).toBe(1550);
    expect(score.last15).toBe(1300);
    expect(score.all).toBe(1050);
    expect(agg.rows[1]!.metric).toBe("FortressDeath");
  });

  it("excludes abandoned sessions from every column", () => {
    const sessions = [
      summarizeEnd(end(100)),
      summarizeEnd(end(99999, "divergence at frame 3")),
      summarizeEnd(end(300)),
    ];
    const agg = aggregateSessions(sessions);
    expect(agg.sessions).toBe(2);
    expect(agg.excludedPartial).toBe(1);
    expect(agg.rows[0]!.best).toBe(300);
    expect(agg.rows[0]!.all).toBe(200);
  });

  it("handles fewer sessions than the window", () => {
    const agg = aggregateSessions([summarizeEnd(end(500))]);
    expect(agg.rows[0]!.last5).toBe(500);
    expect(agg.rows[0]!.all).toBe(500);
  });
});
