/** Height labels in the figure style: "(0)", "(20/7)", "(5/9)". */

const MAX_DEN = 64;

/** Render a height as an exact small fraction when possible, else a short decimal. */
export function fmtHeight(h: number): string {
  if (!Number.isFinite(h)) return String(h);
  for (let q = 1; q <= MAX_DEN; q++) {
    const p = Math.round(h * q);
    if (Math.abs(h * q - p) <= 1e-9 * Math.max(1, Math.abs(h * q))) {
      if (q === 1) return String(p);
      const g = gcd(Math.abs(p), q);
      const pp = p / g;
      const qq = q / g;
      return qq === 1 ? String(pp) : `${pp}/${qq}`;
    }
  }
  return trimNumber(h);
}

export function heightLabel(h: number): string {
  return `(${fmtHeight(h)})`;
}

function gcd(a: number, b: number): number {
  while (b) [a, b] = [b, a % b];
  return a || 1;
}

function trimNumber(x: number): string {
  const s = x.toPrecision(6);
  return String(Number(s));
}
