import { renderClustering } from './clustering.js';
import { el } from './dom.js';
import { asClusteringView, asTimelineView } from './schema.js';
import { initialViewState, type ViewState } from './state.js';
import { renderTimeline } from './timeline.js';
import type { ClusteringView, TimelineView } from './types.js';

export interface AppConfig {
  baseUrl: string;
  gameId: string;
  playerId?: number | null;
  fetchFn?: typeof fetch;
}

interface Payloads {
  clustering: ClusteringView;
  timeline: TimelineView;
}

// Whatever goes wrong, the trainee sees a message, not an empty page.
export function renderErrorBanner(message: string): HTMLElement {
  const banner = el('div', 'error-banner');
  banner.setAttribute('role', 'alert');
  banner.appendChild(el('strong', undefined, 'Dashboard unavailable'));
  banner.appendChild(el('p', undefined, message));
  return banner;
}

async function fetchJson(fetchFn: typeof fetch, url: string): Promise<unknown> {
  const response = await fetchFn(url);
  if (!response.ok) throw new Error(`${url} returned ${response.status}`);
  return response.json();
}

export async function loadPayloads(config: AppConfig): Promise<Payloads> {
  const fetchFn = config.fetchFn ?? fetch;
  const base = config.baseUrl.replace(/\/$/, '');
  const [clusteringDoc, timelineDoc] = await Promise.all([
    fetchJson(fetchFn, `${base}/games/${config.gameId}/views/clustering`),
    fetchJson(fetchFn, `${base}/games/${config.gameId}/views/timeline`),
  ]);
  return {
    clustering: asClusteringView(clusteringDoc),
    timeline: asTimelineView(timelineDoc),
  };
}

function renderAll(root: HTMLElement, payloads: Payloads, state: ViewState, rerender: (next: ViewState) => void) {
  root.textContent = '';
  root.appendChild(renderClustering(payloads.clustering, state));
  root.appendChild(renderTimeline(payloads.timeline, state, rerender));
}

// Fetches both views once, then re-renders from scratch on every state
// change; each frame is a plain function of (payloads, state).
export async function mount(root: HTMLElement, config: AppConfig): Promise<void> {
  let payloads: Payloads;
  try {
    payloads = await loadPayloads(config);
  } catch (error) {
    root.textContent = '';
    root.appendChild(renderErrorBanner(error instanceof Error ? error.message : String(error)));
    return;
  }
  let state = initialViewState(payloads.timeline, config.playerId ?? null);
  const rerender = (next: ViewState) => {
    state = next;
    renderAll(root, payloads, state, rerender);
  };
  renderAll(root, payloads, state, rerender);
}

export function configFromLocation(location: Location): AppConfig {
  const params = new URLSearchParams(location.search);
  const playerRaw = params.get('player');
  return {
    baseUrl: params.get('base') ?? location.origin,
    gameId: params.get('game') ?? 'demo-ctf',
    playerId: playerRaw === null ? null : Number(playerRaw),
  };
}
