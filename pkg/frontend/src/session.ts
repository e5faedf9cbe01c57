// Session logging and multi-session aggregation.
//
// The server is authoritative: the end message carries the applied action
// log in the simulator's episode-log format, already replay-verified. The
// client turns it back into the line-delimited text form for download, so
// `spacefortress replay <file>` can confirm any session offline.

import type { EndMessage, EpisodeLogWire, LogRecord } from "./protocol.js";

export function logToJsonl(log: EpisodeLogWire): string {
  const lines: string[] = [JSON.stringify(log.header)];
  for (const [f, a, r, ev, score] of log.frames) {
    lines.push(JSON.stringify({ f, a, r, ev, score }));
  }
  return lines.join("\n") + "\n";
}

export interface SessionSummary {
  score: number;
  fortressDeaths: number;
  shipDeaths: number;
  missiles: number;
  completed: boolean;
}

export function summarizeEnd(end: EndMessage): SessionSummary {
  return {
    score: end.score,
    fortressDeaths: end.fortress_deaths,
    shipDeaths: end.ship_deaths,
    missiles: end.missiles,
    completed: end.replay === "exact",
  };
}

export interface AggregateRow {
  metric: "Score" | "FortressDeath";
  best: number;
  last5: number;
  last10: number;
  last15: number;
  all: number;
}

export interface AggregateReport {
  sessions: number;
  excludedPartial: number;
  rows: AggregateRow[];
}

function mean(values: number[]): number {
  if (values.length === 0) return NaN;
  return values.reduce((a, b) => a + b, 0) / values.length;
}

function lastK<T>(values: T[], k: number): T[] {
  return values.slice(Math.max(0, values.length - k));
}

// Mirrors the human-results reporting convention: best single game plus
// averages over the last 5/10/15 games (earlier games count as practice)
// and over all games. Abandoned sessions are excluded from every column.
export function aggregateSessions(sessions: SessionSummary[]): AggregateReport {
  const complete = sessions.filter((s) => s.completed);
  const scores = complete.map((s) => s.score);
  const fds = complete.map((s) => s.fortressDeaths);
  const row = (metric: AggregateRow["metric"], values: number[]): AggregateRow => ({
    metric,
    best: values.length ? Math.max(...values) : NaN,
    last5: mean(lastK(values, 5)),
    last10: mean(lastK(values, 10)),
    last15: mean(lastK(values, 15)),
    all: mean(values),
  });
  return {
    sessions: complete.length,
    excludedPartial: sessions.length - complete.length,
    rows: [row("Score", scores), row("FortressDeath", fds)],
  };
}

export function downloadLog(log: EpisodeLogWire, filename = "session.jsonl"): void {
  const blob = new Blob([logToJsonl(log)], { type: "application/jsonl" });
  const url = URL.createObjectURL(blob);
  const a = document.createElement("a");
  a.href = url;
  a.download = filename;
  a.click();
  URL.revokeObjectURL(url);
}
