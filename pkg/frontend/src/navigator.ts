import type { Nav, Page } from './types.js';

export interface NavigatorHandlers {
  /** Route an internal document link or a prev/next/up control. */
  onNavigate(eloId: string): void;
}

const INTERNAL_HREF = /^\/elos\/([a-z0-9-]+)$/;

/**
 * Content pane showing server-rendered pages.
 *
 * The server owns decoration: this pane injects the page HTML verbatim and
 * performs no link selection or href synthesis of its own. It only
 * intercepts clicks on internal document links to keep navigation in-app.
 */
export class ContentPane {
  readonly pane: HTMLElement;
  private readonly controls: Record<'prev' | 'up' | 'next', HTMLButtonElement>;
  private nav: Nav = { prev: null, next: null, up: null };

  constructor(
    host: HTMLElement,
    private readonly handlers: NavigatorHandlers,
  ) {
    const navBar = document.createElement('div');
    navBar.className = 'nav-bar';
    this.controls = {
      prev: this.makeControl(navBar, 'prev', '← Previous'),
      up: this.makeControl(navBar, 'up', '↑ Up'),
      next: this.makeControl(navBar, 'next', 'Next →'),
    };

    this.pane = document.createElement('div');
    this.pane.className = 'content-pane';
    this.pane.addEventListener('click', (event) => this.interceptLink(event));

    host.append(navBar, this.pane);
  }

  showPage(page: Page): void {
    this.nav = page.nav;
    this.pane.innerHTML = page.html;
    for (const direction of ['prev', 'up', 'next'] as const) {
      const target = this.nav[direction];
      this.controls[direction].disabled = target === null;
      this.controls[direction].dataset.target = target ?? '';
    }
  }

  /** hrefs currently displayed — used to assert no client-side synthesis. */
  displayedHrefs(): string[] {
    return [...this.pane.querySelectorAll('a[href]')].map((a) => a.getAttribute('href') ?? '');
  }

  private makeControl(
    bar: HTMLElement,
    direction: 'prev' | 'up' | 'next',
    text: string,
  ): HTMLButtonElement {
    const button = document.createElement('button');
    button.className = `nav-${direction}`;
    button.textContent = text;
    button.disabled = true;
    button.addEventListener('click', () => {
      const target = this.nav[direction];
      if (target) {
        this.handlers.onNavigate(target);
      }
    });
    bar.appendChild(button);
    return button;
  }

  private interceptLink(event: Event): void {
    const target = event.target;
    if (!(target instanceof Element)) return;
    const link = target.closest('a[href]');
    if (!link || !this.pane.contains(link)) return;
    const href = link.getAttribute('href') ?? '';
    const match = INTERNAL_HREF.exec(href);
    if (match) {
      event.preventDefault();
      this.handlers.onNavigate(match[1]);
    }
    // external links fall through to the browser
  }
}
