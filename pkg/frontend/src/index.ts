/**
 * Matrix permanents over plain 2-D arrays.
 *
 * Exposes `combinatoric`, `ryser`, `glynn`, and `opt`, each taking one
 * 2-dimensional array of numbers, bigints, or `{re, im}` complex values.
 * Computation is delegated to the `permanent` command-line tool (set
 * `PERMANENT_CLI` if it is not on PATH); values cross the boundary as
 * shortest round-trip decimals, so results match the library bit for bit.
 *
 * Result typing follows the element kind: integer matrices produce an
 * exact integer (a `number` while it is a safe integer, `bigint` beyond),
 * float matrices produce a `number`, complex matrices a `Complex`.
 * Integer computations whose 64-bit intermediates overflow throw a
 * `RangeError`.
 */
import { spawnSync } from "node:child_process";

export interface Complex {
  re: number;
  im: number;
}

export type MatrixElement = number | bigint | Complex;
export type MatrixInput = ReadonlyArray<ReadonlyArray<MatrixElement>>;
export type PermanentValue = number | bigint | Complex;

export interface OptOptions {
  /** Tuning file for the dispatch; defaults to the library's built-ins. */
  tuningFile?: string;
}

const INT64_MAX = 2n ** 63n - 1n;
const INT64_MIN = -(2n ** 63n);

type Kind = "int" | "float" | "complex";

function isComplex(v: unknown): v is Complex {
  return (
    typeof v === "object" &&
    v !== null &&
    typeof (v as Complex).re === "number" &&
    typeof (v as Complex).im === "number"
  );
}

interface Checked {
  m: number;
  n: number;
  kind: Kind;
  rows: ReadonlyArray<ReadonlyArray<MatrixElement>>;
}

function checkMatrix(a: MatrixInput): Checked {
  if (!Array.isArray(a) || a.length === 0) {
    throw new TypeError("matrix must be a non-empty 2-dimensional array");
  }
  const m = a.length;
  if (!Array.isArray(a[0]) || a[0].length === 0) {
    throw new TypeError("matrix rows must be non-empty arrays (got a 1-D array?)");
  }
  const n = a[0].length;
  let kind: Kind = "int";
  for (let i = 0; i < m; i++) {
    const row = a[i];
    if (!Array.isArray(row)) {
      throw new TypeError(`row ${i} is not an array`);
    }
    if (row.length !== n) {
      throw new TypeError(`row ${i} has ${row.length} elements, expected ${n}`);
    }
    for (let j = 0; j < n; j++) {
      const v = row[j];
      if (typeof v === "bigint") {
        if (v > INT64_MAX || v < INT64_MIN) {
          throw new TypeError(`element (${i},${j}) does not fit in int64`);
        }
      } else if (typeof v === "number") {
        if (!Number.isFinite(v)) {
          throw new TypeError(`element (${i},${j}) is not finite`);
        }
        if (!Number.isInteger(v)) {
          kind = kind === "complex" ? "complex" : "float";
        }
      } else if (isComplex(v)) {
        if (!Number.isFinite(v.re) || !Number.isFinite(v.im)) {
          throw new TypeError(`element (${i},${j}) is not finite`);
        }
        kind = "complex";
      } else {
        throw new TypeError(
          `element (${i},${j}) has unsupported type ${typeof v}`,
        );
      }
    }
  }
  return { m, n, kind, rows: a };
}

function formatReal(v: number): string {
  // toString() is the shortest decimal that round-trips the double
  return Number.isInteger(v) && Math.abs(v) < 1e21 ? `${v}.0` : v.toString();
}

function formatElement(v: MatrixElement, kind: Kind): string {
  if (kind === "complex") {
    const c = isComplex(v) ? v : { re: Number(v), im: 0 };
    const im = c.im < 0 ? `-${formatReal(Math.abs(c.im))}` : `+${formatReal(c.im)}`;
    return `${formatReal(c.re)}${im}i`;
  }
  if (kind === "float") {
    if (typeof v === "bigint") {
      if (v > BigInt(Number.MAX_SAFE_INTEGER) || v < -BigInt(Number.MAX_SAFE_INTEGER)) {
        throw new TypeError("bigint element too large to promote to float64");
      }
      return formatReal(Number(v));
    }
    return formatReal(v as number);
  }
  return v.toString();
}

function serializeMatrix(mat: Checked): string {
  return mat.rows
    .map((row) => row.map((v) => formatElement(v, mat.kind)).join(" "))
    .join("; ");
}

function cliCommand(): string[] {
  const override = process.env.PERMANENT_CLI;
  if (override && override.trim()) {
    return override.trim().split(/\s+/);
  }
  return ["permanent"];
}

function parseResult(text: string): PermanentValue {
  const out = text.trim();
  if (/^-?\d+$/.test(out)) {
    const big = BigInt(out);
    if (big <= BigInt(Number.MAX_SAFE_INTEGER) && big >= -BigInt(Number.MAX_SAFE_INTEGER)) {
      return Number(big);
    }
    return big;
  }
  if (out.endsWith("i")) {
    // split re/im at the last sign that is not an exponent sign
    const body = out.slice(0, -1);
    for (let k = body.length - 1; k > 0; k--) {
      const c = body[k];
      if ((c === "+" || c === "-") && body[k - 1] !== "e" && body[k - 1] !== "E") {
        const re = Number(body.slice(0, k));
        const im = Number(body.slice(k));
        if (!Number.isNaN(re) && !Number.isNaN(im)) {
          return { re, im };
        }
        break;
      }
    }
    throw new Error(`could not parse CLI result: ${out}`);
  }
  const value = Number(out);
  if (Number.isNaN(value)) {
    throw new Error(`could not parse CLI result: ${out}`);
  }
  return value;
}

function run(algorithm: string, a: MatrixInput, options?: OptOptions): PermanentValue {
  const mat = checkMatrix(a);
  const args = ["compute", "--algorithm", algorithm];
  if (options?.tuningFile) {
    args.push("--tuning-file", options.tuningFile);
  }
  // the matrix travels over stdin: argv would mangle leading-minus tokens
  const [cmd, ...pre] = cliCommand();
  const proc = spawnSync(cmd, [...pre, ...args], {
    encoding: "utf-8",
    input: serializeMatrix(mat),
  });
  if (proc.error) {
    throw new Error(
      `failed to launch the permanent CLI (${proc.error.message}); ` +
        "install the Python package or set PERMANENT_CLI",
    );
  }
  if (proc.status === 3) {
    throw new RangeError(
      "an intermediate or the result exceeded the signed 64-bit range",
    );
  }
  if (proc.status !== 0) {
    throw new Error(`permanent CLI failed (exit ${proc.status}): ${proc.stderr.trim()}`);
  }
  return parseResult(proc.stdout);
}

/** Permanent by brute-force enumeration of column permutations. */
export function combinatoric(a: MatrixInput): PermanentValue {
  return run("combinatoric", a);
}

/** Permanent by inclusion-exclusion over column subsets. */
export function ryser(a: MatrixInput): PermanentValue {
  return run("ryser", a);
}

/** Permanent by the sign-vector polarization identity. */
export function glynn(a: MatrixInput): PermanentValue {
  return run("glynn", a);
}

/** Permanent by whichever algorithm the tuning parameters select. */
export function opt(a: MatrixInput, options?: OptOptions): PermanentValue {
  return run("opt", a, options);
}
