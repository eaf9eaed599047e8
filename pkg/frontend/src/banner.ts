/** Dismissible error banner with an optional retry action. */
export class Banner {
  constructor(private readonly host: HTMLElement) {}

  show(message: string, retry?: () => void): void {
    this.clear();
    const banner = document.createElement('div');
    banner.className = 'error-banner';
    banner.setAttribute('role', 'alert');

    const text = document.createElement('span');
    text.className = 'error-banner-text';
    text.textContent = message;
    banner.appendChild(text);

    if (retry) {
      const retryButton = document.createElement('button');
      retryButton.className = 'error-banner-retry';
      retryButton.textContent = 'Retry';
      retryButton.addEventListener('click', () => {
        this.clear();
        retry();
      });
      banner.appendChild(retryButton);
    }

    const dismiss = document.createElement('button');
    dismiss.className = 'error-banner-dismiss';
    dismiss.textContent = 'Dismiss';
    dismiss.addEventListener('click', () => this.clear());
    banner.appendChild(dismiss);

    this.host.appendChild(banner);
  }

  clear(): void {
    this.host.querySelectorAll('.error-banner').forEach((el) => el.remove());
  }
}
