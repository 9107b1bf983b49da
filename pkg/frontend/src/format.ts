/**
 * Number formatting that reproduces the service's JSON export byte-for-byte.
 *
 * The service writes floats with the shortest representation that round-trips
 * (integral values keep a trailing ".0", tiny/huge magnitudes use e-notation
 * with a signed two-digit exponent). Rendering table cells through this
 * formatter means a cell string can be located verbatim in the exported
 * document — the table never shows a number the export does not contain.
 */

export function pyFloat(value: number): string {
  if (!Number.isFinite(value)) {
    throw new RangeError(`non-finite value in results: ${value}`);
  }
  if (value === 0) {
    return Object.is(value, -0) ? "-0.0" : "0.0";
  }
  const abs = Math.abs(value);
  if (abs >= 1e16 || abs < 1e-4) {
    const [mantissa, exponent] = value.toExponential().split("e") as [
      string,
      string,
    ];
    const exp = Number(exponent);
    const sign = exp < 0 ? "-" : "+";
    return `${mantissa}e${sign}${String(Math.abs(exp)).padStart(2, "0")}`;
  }
  if (Number.isInteger(value)) {
    return `${value}.0`;
  }
  return String(value);
}
