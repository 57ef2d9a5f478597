// Expert view: enter low / 50-50 / high, pick the narrow or wide shape,
// adjust sharpness with a live preview, submit. All inline copy is plain
// guidance; the density math happens on the server.

import { ApiClient, ApiError } from './api.js';
import { DensityChart } from './chart.js';
import { el, clear } from './dom.js';
import { EstimateForm, Variant } from './form.js';
import { PreviewController } from './preview.js';
import type { FieldName } from './validation.js';
import type { QuestionJson, SessionDocument } from './types.js';

const VARIANT_HELP =
  'Narrow: you named the extremes mostly to be safe, and the answer is very ' +
  'likely near your 50-50 point. Wide: the far extreme is a real ' +
  'possibility, so keep noticeable chance out there.';

const PHI_HELP =
  'Sharpness: slide down to push chance toward the far extreme, up toward ' +
  '1.0 to concentrate it around your 50-50 point.';

const PRACTICE_PROMPT =
  'Warm-up (not recorded): how many coffee shops operate within 2 km of ' +
  'this building? Jot a low, a 50-50 and a high before the real questions.';

export interface ExpertViewHandles {
  form: EstimateForm;
  chart: DensityChart;
  preview: PreviewController;
  refreshUi: () => void;
}

export function mountExpertView(
  root: HTMLElement,
  client: ApiClient,
  session: SessionDocument,
  expertId: string,
  questionId?: string,
): ExpertViewHandles {
  const question = pickQuestion(session, questionId);
  const form = new EstimateForm(question.question_id, question.bounds);

  clear(root);
  const errorSlots: Record<FieldName, HTMLElement> = {
    low: el('span', { class: 'field-error' }),
    median: el('span', { class: 'field-error' }),
    high: el('span', { class: 'field-error' }),
    phi: el('span', { class: 'field-error' }),
  };

  const lowInput = numberInput('low');
  const medianInput = numberInput('median');
  const highInput = numberInput('high');
  const weightInput = el('input', {
    type: 'number', value: '1', min: '0.1', step: '0.1', id: 'weight',
  });

  const slider = el('input', {
    type: 'range', min: '0.01', max: '1', step: '0.01', value: '0.5', id: 'phi-slider',
  });
  const sliderValue = el('span', { class: 'phi-value' }, ['1.00']);
  const sliderRow = el('div', { class: 'slider-row' }, [
    el('label', { for: 'phi-slider' }, ['sharpness (phi)']),
    slider,
    sliderValue,
    errorSlots.phi,
  ]);
  const narrowNote = el('p', { class: 'muted', id: 'narrow-note' }, [
    'Shape locked to the sharp form; nothing more to adjust for this question.',
  ]);

  const canvas = el('canvas', { width: 560, height: 240, id: 'preview-canvas' });
  const chart = new DensityChart(canvas);
  const previewError = el('p', { class: 'server-error', role: 'alert' });
  const statusLine = el('p', { class: 'status', role: 'status' });
  const submitButton = el('button', { id: 'submit-estimate' }, ['Submit estimate']);

  const preview = new PreviewController(
    client,
    session.session_id,
    question.question_id,
    chart,
    (error: ApiError | null) => {
      previewError.textContent = error ? `${error.message}` : '';
      if (error) {
        form.applyServerError(error.code, error.message);
        renderErrors();
      }
    },
  );

  function renderErrors(): void {
    const errors = form.errors();
    for (const name of Object.keys(errorSlots) as FieldName[]) {
      errorSlots[name].textContent = errors[name] ?? '';
    }
    submitButton.toggleAttribute('disabled', !form.canSubmit());
  }

  function refreshUi(): void {
    sliderRow.style.display = form.sliderVisible ? '' : 'none';
    narrowNote.style.display = form.sliderVisible ? 'none' : '';
    slider.value = String(form.phi);
    sliderValue.textContent = form.phi.toFixed(2);
    renderErrors();
    preview.update(form.previewParams());
  }

  function onField(input: HTMLInputElement, name: 'low' | 'median' | 'high'): void {
    const parsed = input.value.trim() === '' ? null : Number(input.value);
    form.setField(name, Number.isNaN(parsed as number) ? null : parsed);
    statusLine.textContent = '';
    refreshUi();
  }

  lowInput.addEventListener('input', () => onField(lowInput, 'low'));
  medianInput.addEventListener('input', () => onField(medianInput, 'median'));
  highInput.addEventListener('input', () => onField(highInput, 'high'));
  weightInput.addEventListener('input', () => {
    const parsed = Number(weightInput.value);
    if (Number.isFinite(parsed) && parsed > 0) form.setWeight(parsed);
  });
  slider.addEventListener('input', () => {
    form.setPhi(Number(slider.value));
    sliderValue.textContent = form.phi.toFixed(2);
    preview.update(form.previewParams());
  });

  const variantRadio = (variant: Variant, text: string): HTMLElement => {
    const input = el('input', {
      type: 'radio', name: 'variant', value: variant, id: `variant-${variant}`,
    });
    if (variant === form.variant) input.setAttribute('checked', '');
    input.addEventListener('change', () => {
      form.chooseVariant(variant);
      statusLine.textContent = '';
      refreshUi();
    });
    return el('label', { class: 'variant-option' }, [input, text]);
  };

  submitButton.addEventListener('click', async () => {
    if (!form.canSubmit()) return;
    submitButton.toggleAttribute('disabled', true);
    try {
      const summary = await client.submitEstimate(session.session_id, form.payload(expertId));
      statusLine.textContent =
        `Saved. ${summary.estimate_count} estimate(s) recorded for this question.`;
    } catch (error) {
      if (error instanceof ApiError) {
        form.applyServerError(error.code, error.message);
        statusLine.textContent = error.code === 'SESSION_CLOSED'
          ? 'This session is closed; the facilitator is no longer taking estimates.'
          : '';
      } else {
        statusLine.textContent = 'Network problem; estimate not saved.';
      }
    }
    renderErrors();
  });

  root.append(
    el('section', { class: 'card' }, [
      el('h2', {}, [question.prompt]),
      question.scenario_label
        ? el('p', { class: 'muted' }, [`Scenario: ${question.scenario_label}`])
        : '',
      el('details', { class: 'practice' }, [
        el('summary', {}, ['Warm-up exercise']),
        el('p', {}, [PRACTICE_PROMPT]),
        el('textarea', { rows: 2, placeholder: 'scratch space, never submitted' }),
      ]),
      fieldRow('low', `Lowest it could reasonably be (>= ${question.bounds[0]})`, lowInput, errorSlots.low),
      fieldRow('median', '50-50 point: as likely above as below', medianInput, errorSlots.median),
      fieldRow('high', `Highest it could reasonably be (<= ${question.bounds[1]})`, highInput, errorSlots.high),
      el('fieldset', { class: 'variant' }, [
        el('legend', {}, ['Which shape matches what your extremes mean?']),
        el('p', { class: 'muted' }, [VARIANT_HELP]),
        variantRadio('narrow', 'narrow (sharp)'),
        variantRadio('wide', 'wide (heavy tail)'),
      ]),
      el('p', { class: 'muted phi-help' }, [PHI_HELP]),
      sliderRow,
      narrowNote,
      fieldRow('weight', 'Confidence weight (facilitator may use it)', weightInput, el('span')),
      canvas,
      previewError,
      submitButton,
      statusLine,
    ]),
  );

  refreshUi();
  return { form, chart, preview, refreshUi };
}

function pickQuestion(session: SessionDocument, questionId?: string): QuestionJson {
  const question = questionId
    ? session.questions.find((q) => q.question_id === questionId)
    : session.questions[0];
  if (!question) {
    throw new Error(`question not found in session ${session.session_id}`);
  }
  return question;
}

function numberInput(id: string): HTMLInputElement {
  return el('input', { type: 'number', step: 'any', id });
}

function fieldRow(
  id: string,
  label: string,
  input: HTMLElement,
  errorSlot: HTMLElement,
): HTMLElement {
  return el('div', { class: 'field-row' }, [
    el('label', { for: id }, [label]),
    input,
    errorSlot,
  ]);
}
