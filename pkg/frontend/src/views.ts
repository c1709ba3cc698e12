/**
 * Screen rendering. One function, renderScreen, rebuilds the whole app
 * container from a snapshot of server state, so the screen is always a
 * pure function of that state: rendering the same snapshot twice gives
 * byte-identical markup.
 *
 * All dynamic strings go through textContent, never innerHTML.
 */

import type { SessionState } from './api';

export interface ScreenHandlers {
  onChoose: (value: number) => void;
  onUndo: () => void;
  onRestart: () => void;
}

export interface ScreenModel {
  catalogName: string;
  state: SessionState;
  busy: boolean;
  error: string | null;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

function button(label: string, className: string, onClick: () => void): HTMLButtonElement {
  const btn = el('button', className, label);
  btn.type = 'button';
  btn.addEventListener('click', onClick);
  return btn;
}

function renderHeader(catalogName: string): HTMLElement {
  const header = el('header', 'shop-header');
  header.appendChild(el('h1', undefined, `${catalogName} finder`));
  header.appendChild(
    el('p', 'tagline', 'Answer a few questions and we will point at the right product.'),
  );
  return header;
}

function renderTrail(model: ScreenModel, handlers: ScreenHandlers): HTMLElement {
  const nav = el('nav', 'trail');
  nav.setAttribute('aria-label', 'Your answers so far');
  const list = el('ol', 'trail-list');
  for (const step of model.state.trail) {
    const item = el('li', 'trail-step');
    item.appendChild(el('span', 'trail-variable', step.variable));
    item.appendChild(el('span', 'trail-label', step.label));
    list.appendChild(item);
  }
  nav.appendChild(list);
  if (model.state.trail.length > 0) {
    nav.appendChild(button('Undo last answer', 'btn-undo', handlers.onUndo));
  }
  return nav;
}

function renderQuestion(model: ScreenModel, handlers: ScreenHandlers): HTMLElement {
  const question = model.state.question;
  if (!question) throw new Error('question state without a question');
  const card = el('section', 'card card-question');
  const depth = el('p', 'depth', `Question ${model.state.trail.length + 1}`);
  depth.setAttribute('aria-live', 'polite');
  card.appendChild(depth);
  card.appendChild(el('h2', 'question-variable', question.variable));
  const options = el('div', 'options');
  options.setAttribute('role', 'group');
  options.setAttribute('aria-label', `Options for ${question.variable}`);
  question.options.forEach((label, value) => {
    const btn = button(label, 'btn-option', () => handlers.onChoose(value));
    btn.dataset.value = String(value);
    options.appendChild(btn);
  });
  card.appendChild(options);
  return card;
}

function renderResolved(model: ScreenModel, handlers: ScreenHandlers): HTMLElement {
  const result = model.state.result;
  if (!result) throw new Error('resolved state without a result');
  const card = el('section', 'card card-result');
  card.appendChild(el('p', 'depth', 'Your match'));
  card.appendChild(el('h2', 'result-label', result.label));
  card.appendChild(el('p', 'result-id', `product #${result.product_id}`));
  const actions = el('div', 'actions');
  actions.appendChild(button('Change last answer', 'btn-undo-result', handlers.onUndo));
  actions.appendChild(button('Start over', 'btn-restart', handlers.onRestart));
  card.appendChild(actions);
  return card;
}

function renderNoMatch(model: ScreenModel, handlers: ScreenHandlers): HTMLElement {
  const card = el('section', 'card card-no-match');
  card.appendChild(el('h2', 'no-match-title', 'No product matches'));
  card.appendChild(
    el('p', 'no-match-text', 'Nothing in the catalog fits those answers. Step back or start over.'),
  );
  const actions = el('div', 'actions');
  if (model.state.trail.length > 0) {
    actions.appendChild(button('Change last answer', 'btn-undo-result', handlers.onUndo));
  }
  actions.appendChild(button('Start over', 'btn-restart', handlers.onRestart));
  card.appendChild(actions);
  return card;
}

export function renderScreen(
  root: HTMLElement,
  model: ScreenModel,
  handlers: ScreenHandlers,
): void {
  root.textContent = '';
  root.appendChild(renderHeader(model.catalogName));
  if (model.error) {
    const line = el('p', 'error-line', model.error);
    line.setAttribute('role', 'alert');
    root.appendChild(line);
  }
  root.appendChild(renderTrail(model, handlers));
  switch (model.state.status) {
    case 'question':
      root.appendChild(renderQuestion(model, handlers));
      break;
    case 'resolved':
      root.appendChild(renderResolved(model, handlers));
      break;
    default:
      root.appendChild(renderNoMatch(model, handlers));
      break;
  }
  if (model.busy) {
    root.querySelectorAll('button').forEach((btn) => {
      btn.disabled = true;
    });
  }
}

export function renderFailure(root: HTMLElement, message: string, onRetry: () => void): void {
  root.textContent = '';
  const card = el('section', 'card card-failure');
  const line = el('p', 'error-line', message);
  line.setAttribute('role', 'alert');
  card.appendChild(line);
  card.appendChild(button('Retry', 'btn-retry', onRetry));
  root.appendChild(card);
}
