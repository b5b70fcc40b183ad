/* tslint:disable */
/* eslint-disable */

/**
 * A real surface sampled on an `nx × ny` grid, row-major.
 */
export class Mesh {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Max deviation of the numeric Gauss curvature from its target.
     */
    curvature_deviation(): number;
    max_imag(): number;
    nx(): number;
    ny(): number;
    /**
     * `x, y, z` per node.
     */
    positions(): Float64Array;
}

/**
 * Pseudospherical surface from one real factor `α = ir`, line `(i cos t/2, i sin t/2)`,
 * applied to the kink of the given rapidity (the vacuum when it is zero).
 */
export function pseudosphere(rapidity: number, r: number, t: number, n: number, h: number): Mesh;

/**
 * Real two-factor dressing `(α, L)`, `(1/ᾱ, L̄')` of the pendulum or vacuum seed at λ = 1.
 * The line is `(a, b)` with `b = √(−1/4 − a²)`.
 */
export function real_dressing(omega0: number, alpha_re: number, alpha_im: number, a_re: number, a_im: number, n: number, h: number): Mesh;

/**
 * Sym surface of the pendulum seed (or the vacuum for `omega0 = 0`) on the unit circle.
 */
export function seed_surface(omega0: number, angle: number, n: number, h: number): Mesh;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_mesh_free: (a: number, b: number) => void;
    readonly mesh_curvature_deviation: (a: number) => number;
    readonly mesh_max_imag: (a: number) => number;
    readonly mesh_nx: (a: number) => number;
    readonly mesh_ny: (a: number) => number;
    readonly mesh_positions: (a: number) => [number, number];
    readonly pseudosphere: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
    readonly real_dressing: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly seed_surface: (a: number, b: number, c: number, d: number) => [number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
