/* Typed client for the game service JSON API.
 *
 * The server is the only judge of legality; this module never decides
 * anything about the game, it only moves JSON back and forth and gives the
 * payloads names.
 */

export interface FamilyRef {
  kind: string;
  params: number[];
}

export interface GraphJson {
  n: number;
  edges: [number, number][];
}

export interface MoveJson {
  v: number;
  label: number;
}

export type Player = "Alice" | "Bob";
export type GameStatus = "ongoing" | "AliceWon" | "BobWon";

export interface TranscriptJson {
  moves: MoveJson[];
  winner: Player | null;
}

export interface Snapshot {
  id: string;
  graph: GraphJson;
  family: FamilyRef | null;
  l: number;
  humanPlays: Player;
  engineStrategy: string;
  bobStarts: boolean;
  status: GameStatus;
  turn: Player | null;
  assignment: Record<string, number>;
  usedWeights: number[];
  transcript: TranscriptJson;
  legalMoves: MoveJson[];
}

export interface CreateResponse extends Snapshot {
  engineOpening: MoveJson | null;
}

export interface CreateRequest {
  family?: string;
  graph?: GraphJson;
  seed?: number;
  l?: number;
  humanPlays: Player;
  engineStrategy?: string;
  engineSeed?: number;
  bobStarts?: boolean;
}

/* Rejection reasons mirror the game module's illegal-move kinds, plus the
 * service's own "not-your-turn" and "game-over". */
export interface MoveReason {
  kind: string;
  message: string;
  v?: number;
  label?: number;
  weight?: number;
  edges?: [number, number][];
}

export interface MoveResponse {
  accepted: boolean;
  reason: MoveReason | null;
  engineReply: MoveJson | null;
  status: GameStatus;
  legalMoves: MoveJson[];
  snapshot: Snapshot;
}

/* status 0 means the request never reached the server (network failure);
 * anything else is the HTTP status with the server's detail message. */
export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

const defaultFetch: FetchLike = (input, init) => globalThis.fetch(input, init);

export class GameClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = defaultFetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    let resp: Response;
    try {
      resp = await this.fetchFn(this.base + path, init);
    } catch (err) {
      throw new ApiError(0, `network failure: ${String(err)}`);
    }
    const text = await resp.text();
    if (!resp.ok) {
      let detail = text;
      try {
        const body = JSON.parse(text) as { detail?: unknown };
        if (typeof body.detail === "string") detail = body.detail;
      } catch {
        /* non-JSON error body, keep the raw text */
      }
      throw new ApiError(resp.status, detail);
    }
    return JSON.parse(text) as T;
  }

  createSession(req: CreateRequest): Promise<CreateResponse> {
    return this.request<CreateResponse>("/api/session", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(req),
    });
  }

  getSession(id: string): Promise<Snapshot> {
    return this.request<Snapshot>(`/api/session/${encodeURIComponent(id)}`);
  }

  postMove(id: string, move: MoveJson): Promise<MoveResponse> {
    return this.request<MoveResponse>(`/api/session/${encodeURIComponent(id)}/move`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(move),
    });
  }

  deleteSession(id: string): Promise<{ deleted: boolean }> {
    return this.request<{ deleted: boolean }>(`/api/session/${encodeURIComponent(id)}`, {
      method: "DELETE",
    });
  }
}

/* Who made move number i (0-based) of a transcript. */
export function moverOf(index: number, bobStarts: boolean): Player {
  const first: Player = bobStarts ? "Bob" : "Alice";
  const second: Player = bobStarts ? "Alice" : "Bob";
  return index % 2 === 0 ? first : second;
}
