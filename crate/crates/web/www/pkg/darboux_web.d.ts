/* tslint:disable */
/* eslint-disable */

/**
 * Normalized eigenfunction of the transformed operator as `[x, re, im, ...]`.
 */
export function eigenfunction(d: number, b: number, depth: number, width: number, k: number): Float64Array;

/**
 * `|(Lf)'(0) + w(0)(Lf)(0)|` on `samples` points of `[k_min, k_max]`, as
 * `[k0, m0, k1, m1, ...]`. Degenerate samples are `NaN`.
 */
export function scan_curve(d: number, b: number, depth: number, width: number, k_min: number, k_max: number, samples: number): Float64Array;

/**
 * Fitted minima of the scan as `[k, modulus, is_singularity, ...]`.
 */
export function scan_minima(d: number, b: number, depth: number, width: number, k_min: number, k_max: number, samples: number): Float64Array;

/**
 * Transformed potential `V` as `[x, re, im, ...]`.
 */
export function transformed_potential(d: number, b: number, depth: number, width: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly eigenfunction: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly scan_curve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly scan_minima: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number, number];
    readonly transformed_potential: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
