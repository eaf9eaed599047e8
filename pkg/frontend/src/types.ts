/** Wire types mirroring the gateway's JSON payloads. */

export interface TreeNode {
  elo_id: string;
  depth: number;
  path: number[];
  title: string | null;
  children: TreeNode[];
}

export interface Nav {
  prev: string | null;
  next: string | null;
  up: string | null;
}

export type Mode = 'descriptive' | 'slide';

export interface Page {
  elo_id: string;
  mode: string;
  html: string;
  nav: Nav;
  active_contexts: string[];
  badges: Record<string, string>;
}

export interface ContextInfo {
  id: string;
  title: string | null;
  description: string | null;
  creator: string | null;
}

export interface SessionContexts {
  session: string;
  active_contexts: string[];
}
