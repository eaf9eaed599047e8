import type { TreeNode } from './types.js';

/**
 * Render the instructional hierarchy as a collapsible nested list.
 *
 * The server's tree is not normalised: an ELO reached over several paths
 * appears once per path, so re-used nodes show up at each location.
 */
export function renderTree(node: TreeNode, onSelect: (eloId: string) => void): HTMLUListElement {
  const list = document.createElement('ul');
  list.className = 'tree';
  list.appendChild(renderNode(node, onSelect));
  return list;
}

function renderNode(node: TreeNode, onSelect: (eloId: string) => void): HTMLLIElement {
  const item = document.createElement('li');
  item.className = 'tree-node';
  item.dataset.eloId = node.elo_id;
  item.dataset.path = node.path.join('.');

  const label = document.createElement('button');
  label.className = 'tree-label';
  label.textContent = node.title ?? node.elo_id;
  label.addEventListener('click', () => onSelect(node.elo_id));
  item.appendChild(label);

  if (node.children.length > 0) {
    const toggle = document.createElement('button');
    toggle.className = 'tree-toggle';
    toggle.textContent = '−';
    toggle.setAttribute('aria-expanded', 'true');

    const children = document.createElement('ul');
    children.className = 'tree-children';
    for (const child of node.children) {
      children.appendChild(renderNode(child, onSelect));
    }

    toggle.addEventListener('click', () => {
      const expanded = toggle.getAttribute('aria-expanded') === 'true';
      toggle.setAttribute('aria-expanded', String(!expanded));
      toggle.textContent = expanded ? '+' : '−';
      children.hidden = expanded;
    });

    item.insertBefore(toggle, label);
    item.appendChild(children);
  }
  return item;
}

export function renderEmptyState(): HTMLParagraphElement {
  const message = document.createElement('p');
  message.className = 'tree-empty';
  message.textContent = 'The repository is empty.';
  return message;
}
