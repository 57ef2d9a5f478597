// Facilitator view: watch the pooled distribution evolve while experts
// submit. Polls the aggregate endpoint, overlays individual curves on
// demand, flags the detected mode count, and shows a stale badge whenever a
// poll round fails.

import { ApiClient } from './api.js';
import { DensityChart, Series } from './chart.js';
import { el, clear } from './dom.js';
import { Poller } from './poller.js';
import type { AggregatePayload, SessionDocument } from './types.js';

const POOLED_COLOR = 'rgb(46, 102, 166)';
const OVERLAY_COLORS = [
  'rgb(204, 121, 167)',
  'rgb(0, 158, 115)',
  'rgb(230, 159, 0)',
  'rgb(86, 180, 233)',
  'rgb(213, 94, 0)',
  'rgb(140, 86, 75)',
];

export interface FacilitatorHandles {
  poller: Poller<AggregatePayload>;
  chart: DensityChart;
}

export function mountFacilitatorView(
  root: HTMLElement,
  client: ApiClient,
  session: SessionDocument,
  questionId?: string,
  pollIntervalMs = 3000,
): FacilitatorHandles {
  const question = questionId
    ? session.questions.find((q) => q.question_id === questionId)
    : session.questions[0];
  if (!question) throw new Error('session has no such question');

  clear(root);
  const canvas = el('canvas', { width: 680, height: 300, id: 'pooled-canvas' });
  const chart = new DensityChart(canvas);
  const staleBadge = el('span', { class: 'badge stale', id: 'stale-badge' }, ['stale']);
  staleBadge.style.display = 'none';
  const modeBadge = el('span', { class: 'badge', id: 'mode-badge' }, ['no estimates yet']);
  const contributorsLine = el('p', { class: 'muted', id: 'contributors' });
  const weightedBox = el('input', { type: 'checkbox', id: 'weighted' });
  const overlayBox = el('input', { type: 'checkbox', id: 'overlay' });
  const closeButton = el('button', { id: 'close-session' }, ['Close session']);
  const statusLine = el('p', { class: 'status' });

  let latest: AggregatePayload | null = null;
  let overlays: Series[] = [];

  function redraw(): void {
    if (!latest) return;
    const pooled: Series = {
      x: latest.x,
      y: latest.density,
      color: POOLED_COLOR,
      lineWidth: 2.4,
      fill: true,
    };
    const series = overlayBox.checked ? [...overlays, pooled] : [pooled];
    chart.render(series, latest.modes);
    const n = latest.modes.length;
    modeBadge.textContent = `${n} mode${n === 1 ? '' : 's'} detected`;
    modeBadge.classList.toggle('multi', n >= 2);
    contributorsLine.textContent =
      `${latest.contributor_ids.length} expert(s): ${latest.contributor_ids.join(', ')}`;
  }

  async function refreshOverlays(): Promise<void> {
    if (!overlayBox.checked) {
      overlays = [];
      return;
    }
    const doc = await client.getSession(session.session_id);
    const relevant = doc.estimates.filter((e) => e.question_id === question!.question_id);
    const curves = await Promise.all(
      relevant.map((e) =>
        client.fetchPreview(session.session_id, question!.question_id, e.params),
      ),
    );
    overlays = curves.map((grid, i) => ({
      x: grid.x,
      y: grid.density,
      color: OVERLAY_COLORS[i % OVERLAY_COLORS.length]!,
      lineWidth: 1,
    }));
  }

  const poller = new Poller<AggregatePayload>(
    async () => {
      const payload = await client.fetchAggregate(
        session.session_id,
        question.question_id,
        weightedBox.checked,
      );
      await refreshOverlays().catch(() => undefined);
      return payload;
    },
    (payload) => {
      latest = payload;
      redraw();
    },
    (stale) => {
      staleBadge.style.display = stale ? '' : 'none';
    },
    pollIntervalMs,
  );

  weightedBox.addEventListener('change', () => void poller.tick());
  overlayBox.addEventListener('change', () => {
    void refreshOverlays().then(redraw).catch(() => undefined);
  });
  closeButton.addEventListener('click', async () => {
    try {
      await client.closeSession(session.session_id);
      statusLine.textContent = 'Session closed; submissions are now rejected.';
    } catch {
      statusLine.textContent = 'Could not close the session.';
    }
  });

  root.append(
    el('section', { class: 'card' }, [
      el('h2', {}, [`Pooled view: ${question.prompt}`]),
      el('p', { class: 'muted' }, [
        `Session ${session.session_id}. Share this id with the panel.`,
      ]),
      el('div', { class: 'toolbar' }, [
        el('label', {}, [weightedBox, ' confidence-weighted average']),
        el('label', {}, [overlayBox, ' overlay individual experts']),
        modeBadge,
        staleBadge,
      ]),
      canvas,
      contributorsLine,
      closeButton,
      statusLine,
    ]),
  );

  poller.start();
  return { poller, chart };
}
