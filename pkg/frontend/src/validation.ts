// Client-side mirror of the server's estimate validation, so obviously bad
// input never leaves the form. The server remains the source of truth; its
// error codes map back onto the same field names.

export interface FormValues {
  low: number | null;
  median: number | null;
  high: number | null;
  phi: number;
}

export type FieldName = 'low' | 'median' | 'high' | 'phi';

export type FieldErrors = Partial<Record<FieldName, string>>;

export function validateEstimate(values: FormValues, bounds: [number, number]): FieldErrors {
  const errors: FieldErrors = {};
  const { low, median, high, phi } = values;
  const missing = (v: number | null): boolean => v === null || !Number.isFinite(v);

  if (missing(low)) errors.low = 'enter a number';
  if (missing(median)) errors.median = 'enter a number';
  if (missing(high)) errors.high = 'enter a number';
  if (!Number.isFinite(phi)) errors.phi = 'enter a number';
  if (Object.keys(errors).length > 0) return errors;

  if (!(low! < median!)) {
    errors.median = 'median must be above the low value';
  }
  if (!(median! < high!)) {
    errors.high = 'high must be above the median';
  }
  if (!(phi > 0 && phi <= 1)) {
    errors.phi = 'sharpness must be in (0, 1]';
  }
  const [lo, hi] = bounds;
  if (low! < lo) {
    errors.low = `must be at least ${lo}`;
  }
  if (high! > hi) {
    errors.high = `must be at most ${hi}`;
  }
  return errors;
}

// Server codes that pin the problem to a specific input.
export function fieldForErrorCode(code: string): FieldName | null {
  switch (code) {
    case 'PHI_OUT_OF_RANGE':
      return 'phi';
    case 'ORDER_VIOLATION':
      return 'median';
    case 'BOUNDS_VIOLATION':
      return 'high';
    case 'NON_FINITE':
      return 'low';
    default:
      return null;
  }
}
