import { ApiClient } from './api.js';
import { Banner } from './banner.js';
import { ContextPicker } from './contexts.js';
import { ContentPane } from './navigator.js';
import { renderEmptyState, renderTree } from './tree.js';
import type { ContextInfo, Mode, Page } from './types.js';

export interface UiState {
  sessionId: string;
  selectedElo: string | null;
  mode: Mode;
  /** active flags mirror the server session after every successful toggle */
  contexts: { info: ContextInfo; active: boolean }[];
  root: string | null;
}

export class App {
  readonly state: UiState;
  readonly banner: Banner;
  readonly picker: ContextPicker;
  readonly content: ContentPane;
  private readonly sidebar: HTMLElement;
  private readonly modeToggle: HTMLButtonElement;
  private pageFetchSeq = 0; // later page fetches supersede earlier ones

  constructor(
    host: HTMLElement,
    private readonly client: ApiClient,
    sessionId: string = `s-${Date.now()}`,
  ) {
    this.state = { sessionId, selectedElo: null, mode: 'descriptive', contexts: [], root: null };

    const bannerHost = document.createElement('div');
    bannerHost.className = 'banner-host';
    this.banner = new Banner(bannerHost);

    this.sidebar = document.createElement('nav');
    this.sidebar.className = 'sidebar';

    const pickerHost = document.createElement('aside');
    pickerHost.className = 'picker-host';
    this.picker = new ContextPicker(pickerHost, {
      onToggle: (contextId, enabled) => this.toggleContext(contextId, enabled),
    });

    const main = document.createElement('main');
    main.className = 'main';
    this.modeToggle = document.createElement('button');
    this.modeToggle.className = 'mode-toggle';
    this.modeToggle.textContent = 'Slide view';
    this.modeToggle.addEventListener('click', () => {
      void this.setMode(this.state.mode === 'descriptive' ? 'slide' : 'descriptive');
    });
    main.appendChild(this.modeToggle);
    this.content = new ContentPane(main, {
      onNavigate: (eloId) => void this.openElo(eloId),
    });

    host.append(bannerHost, this.sidebar, pickerHost, main);
  }

  async init(): Promise<void> {
    if (!(await this.loadTree())) {
      return; // keep the retry banner; nothing below can succeed either
    }
    try {
      const contexts = await this.client.getContexts();
      const session = await this.client.getSessionContexts(this.state.sessionId);
      this.state.contexts = contexts.map((info) => ({
        info,
        active: session.active_contexts.includes(info.id),
      }));
      this.picker.render(contexts, session.active_contexts);
    } catch (err) {
      this.showError(err);
    }
    if (this.state.root) {
      await this.openElo(this.state.root);
    }
  }

  async loadTree(): Promise<boolean> {
    this.sidebar.replaceChildren();
    let roots: string[];
    try {
      roots = await this.client.getRoots();
    } catch (err) {
      this.showError(err, () => void this.loadTree());
      return false;
    }
    if (roots.length === 0) {
      this.sidebar.appendChild(renderEmptyState());
      return true;
    }
    this.state.root = roots[0];
    for (const root of roots) {
      try {
        const tree = await this.client.getTree(root);
        this.sidebar.appendChild(renderTree(tree, (eloId) => void this.openElo(eloId)));
      } catch (err) {
        this.showError(err, () => void this.loadTree());
        return false;
      }
    }
    return true;
  }

  async openElo(eloId: string): Promise<Page | null> {
    return this.fetchPage(eloId, this.state.mode);
  }

  async setMode(mode: Mode): Promise<Page | null> {
    if (!this.state.selectedElo) {
      this.state.mode = mode;
      return null;
    }
    return this.fetchPage(this.state.selectedElo, mode);
  }

  /** PUT the new active set; on failure the picker reverts the checkbox. */
  private async toggleContext(contextId: string, enabled: boolean): Promise<string[]> {
    const wanted = this.state.contexts
      .filter((c) => (c.info.id === contextId ? enabled : c.active))
      .map((c) => c.info.id);
    let confirmed: string[];
    try {
      confirmed = (await this.client.putSessionContexts(this.state.sessionId, wanted))
        .active_contexts;
    } catch (err) {
      this.showError(err);
      throw err;
    }
    for (const entry of this.state.contexts) {
      entry.active = confirmed.includes(entry.info.id);
    }
    if (this.state.selectedElo) {
      await this.fetchPage(this.state.selectedElo, this.state.mode);
    }
    return confirmed;
  }

  private async fetchPage(eloId: string, mode: Mode): Promise<Page | null> {
    const seq = ++this.pageFetchSeq;
    let page: Page;
    try {
      page = await this.client.getPage(eloId, {
        mode,
        session: this.state.sessionId,
        root: this.state.root ?? undefined,
      });
    } catch (err) {
      if (seq === this.pageFetchSeq) {
        this.showError(err);
      }
      return null;
    }
    if (seq !== this.pageFetchSeq) {
      return null; // superseded by a later fetch
    }
    this.state.selectedElo = eloId;
    this.state.mode = mode;
    this.modeToggle.textContent = mode === 'descriptive' ? 'Slide view' : 'Descriptive view';
    this.banner.clear();
    this.content.showPage(page);
    return page;
  }

  private showError(err: unknown, retry?: () => void): void {
    this.banner.show(err instanceof Error ? err.message : String(err), retry);
  }
}

export function mount(host: HTMLElement, baseUrl = ''): App {
  const app = new App(host, new ApiClient(baseUrl));
  void app.init();
  return app;
}
