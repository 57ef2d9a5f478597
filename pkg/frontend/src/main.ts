// Entry point: landing page with expert join and facilitator create/open
// flows. The current role and session ride in the URL hash so a reload
// lands back on the same view.

import { ApiClient, ApiError } from './api.js';
import { el, clear } from './dom.js';
import { mountExpertView } from './expert.js';
import { mountFacilitatorView } from './facilitator.js';

const client = new ApiClient();

function appRoot(): HTMLElement {
  const root = document.getElementById('app');
  if (!root) throw new Error('missing #app element');
  return root;
}

async function route(): Promise<void> {
  const root = appRoot();
  const parts = window.location.hash.replace(/^#\/?/, '').split('/');
  try {
    if (parts[0] === 'expert' && parts[1] && parts[2]) {
      const session = await client.getSession(parts[1]);
      mountExpertView(root, client, session, decodeURIComponent(parts[2]), parts[3]);
      return;
    }
    if (parts[0] === 'facilitator' && parts[1]) {
      const session = await client.getSession(parts[1]);
      mountFacilitatorView(root, client, session, parts[2]);
      return;
    }
  } catch (error) {
    renderLanding(root, error instanceof ApiError ? error.message : String(error));
    return;
  }
  renderLanding(root);
}

function renderLanding(root: HTMLElement, problem?: string): void {
  clear(root);

  const joinSession = el('input', { placeholder: 'session id', id: 'join-session' });
  const joinName = el('input', { placeholder: 'your name', id: 'join-name' });
  const joinButton = el('button', {}, ['Join as expert']);
  joinButton.addEventListener('click', () => {
    if (joinSession.value && joinName.value) {
      window.location.hash =
        `#/expert/${joinSession.value.trim()}/${encodeURIComponent(joinName.value.trim())}`;
    }
  });

  const openSession = el('input', { placeholder: 'session id', id: 'open-session' });
  const openButton = el('button', {}, ['Open facilitator view']);
  openButton.addEventListener('click', () => {
    if (openSession.value) {
      window.location.hash = `#/facilitator/${openSession.value.trim()}`;
    }
  });

  const prompt = el('input', {
    placeholder: 'question to elicit', id: 'new-prompt', size: 40,
  });
  const kind = el('select', { id: 'new-kind' }, [
    el('option', { value: 'probability' }, ['probability (0 to 1)']),
    el('option', { value: 'utility' }, ['utility scale']),
  ]);
  const boundLo = el('input', { type: 'number', value: '0', id: 'new-lo' });
  const boundHi = el('input', { type: 'number', value: '100', id: 'new-hi' });
  const scenario = el('input', { placeholder: 'scenario label (optional)', id: 'new-scenario' });
  const createButton = el('button', {}, ['Create session']);
  const createStatus = el('p', { class: 'status' });
  createButton.addEventListener('click', async () => {
    try {
      const isProbability = kind.value === 'probability';
      const session = await client.createSession([
        {
          prompt: prompt.value || 'Uncertain quantity',
          domain_kind: isProbability ? 'probability' : 'utility',
          bounds: isProbability ? undefined : [Number(boundLo.value), Number(boundHi.value)],
          scenario_label: scenario.value || undefined,
        },
      ]);
      window.location.hash = `#/facilitator/${session.session_id}`;
    } catch (error) {
      createStatus.textContent =
        error instanceof ApiError ? error.message : 'could not create session';
    }
  });

  root.append(
    el('h1', {}, ['Group risk elicitation']),
    problem ? el('p', { class: 'server-error' }, [problem]) : '',
    el('div', { class: 'landing' }, [
      el('section', { class: 'card' }, [
        el('h2', {}, ['Expert']),
        el('p', { class: 'muted' }, ['Join a running session with the id your facilitator shared.']),
        joinSession, joinName, joinButton,
      ]),
      el('section', { class: 'card' }, [
        el('h2', {}, ['Facilitator']),
        el('p', { class: 'muted' }, ['Open an existing session:']),
        openSession, openButton,
        el('hr'),
        el('p', { class: 'muted' }, ['Or create a new one:']),
        prompt, kind,
        el('label', {}, ['bounds ', boundLo, ' to ', boundHi]),
        scenario, createButton, createStatus,
      ]),
    ]),
  );
}

window.addEventListener('hashchange', () => void route());
void route();
