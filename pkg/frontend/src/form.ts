// State machine for one expert's answer to one question.
//
// The protocol's variant choice drives the sharpness control: picking
// "narrow" locks phi at 1 and hides the slider; picking "wide" reveals the
// slider starting at 0.5. Toggling back to narrow restores phi = 1, and the
// last slider position is remembered if the expert returns to wide.

import type { EstimateJson, ParamsJson } from './types.js';
import {
  FieldErrors,
  FormValues,
  fieldForErrorCode,
  validateEstimate,
} from './validation.js';

export type Variant = 'narrow' | 'wide';

export const WIDE_DEFAULT_PHI = 0.5;

export class EstimateForm {
  low: number | null = null;
  median: number | null = null;
  high: number | null = null;
  weight = 1.0;
  variant: Variant = 'narrow';

  private widePhi = WIDE_DEFAULT_PHI;
  private serverErrors: FieldErrors = {};

  constructor(
    readonly questionId: string,
    readonly bounds: [number, number],
  ) {}

  get phi(): number {
    return this.variant === 'narrow' ? 1.0 : this.widePhi;
  }

  get sliderVisible(): boolean {
    return this.variant === 'wide';
  }

  setField(name: 'low' | 'median' | 'high', value: number | null): void {
    this[name] = value;
    this.serverErrors = {};
  }

  setWeight(value: number): void {
    this.weight = value;
  }

  chooseVariant(variant: Variant): void {
    this.variant = variant;
    this.serverErrors = {};
  }

  setPhi(value: number): void {
    if (this.variant === 'wide') {
      this.widePhi = value;
      this.serverErrors = {};
    }
  }

  private get values(): FormValues {
    return { low: this.low, median: this.median, high: this.high, phi: this.phi };
  }

  errors(): FieldErrors {
    return { ...validateEstimate(this.values, this.bounds), ...this.serverErrors };
  }

  canSubmit(): boolean {
    return Object.keys(this.errors()).length === 0;
  }

  // Valid parameters for the live preview, or null while the form is bad.
  previewParams(): ParamsJson | null {
    if (Object.keys(validateEstimate(this.values, this.bounds)).length > 0) {
      return null;
    }
    return { low: this.low!, median: this.median!, high: this.high!, phi: this.phi };
  }

  payload(expertId: string): EstimateJson {
    if (!this.canSubmit()) {
      throw new Error('form has validation errors');
    }
    return {
      question_id: this.questionId,
      expert_id: expertId,
      params: { low: this.low!, median: this.median!, high: this.high!, phi: this.phi },
      weight: this.weight,
      variant_choice: this.variant === 'narrow' ? 'sharp' : 'wide',
    };
  }

  // Pin a server rejection to the offending field so it renders inline.
  applyServerError(code: string, message: string): void {
    const field = fieldForErrorCode(code);
    if (field !== null) {
      this.serverErrors = { [field]: message };
    }
  }
}
