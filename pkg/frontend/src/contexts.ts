import type { ContextInfo } from './types.js';

export interface ContextPickerHandlers {
  /**
   * Apply a toggle; resolves with the server's active set on success and
   * rejects on failure (the picker then reverts the checkbox).
   */
  onToggle(contextId: string, enabled: boolean): Promise<string[]>;
}

/** Checkbox list of link contexts; active flags mirror the server session. */
export class ContextPicker {
  private active = new Set<string>();

  constructor(
    private readonly host: HTMLElement,
    private readonly handlers: ContextPickerHandlers,
  ) {}

  render(contexts: ContextInfo[], active: string[]): void {
    this.active = new Set(active);
    this.host.replaceChildren();
    const list = document.createElement('ul');
    list.className = 'context-picker';
    for (const context of contexts) {
      list.appendChild(this.renderEntry(context));
    }
    this.host.appendChild(list);
  }

  activeIds(): string[] {
    return [...this.active];
  }

  private renderEntry(context: ContextInfo): HTMLLIElement {
    const item = document.createElement('li');
    item.className = 'context-entry';

    const checkbox = document.createElement('input');
    checkbox.type = 'checkbox';
    checkbox.id = `context-${context.id}`;
    checkbox.dataset.contextId = context.id;
    checkbox.checked = this.active.has(context.id);

    const label = document.createElement('label');
    label.htmlFor = checkbox.id;
    label.textContent = context.title ?? context.id;
    if (context.description) {
      label.title = context.description;
    }

    checkbox.addEventListener('change', async () => {
      const enabled = checkbox.checked;
      try {
        const serverActive = await this.handlers.onToggle(context.id, enabled);
        this.active = new Set(serverActive);
      } catch {
        checkbox.checked = !enabled; // failed PUT reverts the checkbox
      }
    });

    item.append(checkbox, label);
    return item;
  }
}
