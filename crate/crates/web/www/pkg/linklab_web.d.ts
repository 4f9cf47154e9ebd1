/* tslint:disable */
/* eslint-disable */

/**
 * Commutator of the torus pair with linking number `lambda` divided by the
 * Hopf reference, massless `c2 = 1`: `[ratio, ratio_error, z, z_error]`.
 */
export function linking_ratio(lambda: number, width: number): Float64Array;

/**
 * Euclidean norm of the smeared loop function of the first Hopf circle on
 * an `n × n` grid of the plane `t = 0, z = z`, spanning `[-extent, extent]²`.
 * Row-major, `y` outer.
 */
export function loop_function_slice(width: number, z: number, extent: number, n: number): Float64Array;

/**
 * Torus link pair: `[gauss, gauss_error, crossing_count, crossings]`.
 */
export function torus_linking(lambda: number, major: number, minor: number): Float64Array;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly linking_ratio: (a: number, b: number) => [number, number, number, number];
    readonly loop_function_slice: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly torus_linking: (a: number, b: number, c: number) => [number, number, number, number];
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
