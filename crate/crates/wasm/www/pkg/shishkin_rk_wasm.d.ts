/* tslint:disable */
/* eslint-disable */

/**
 * One integration, with the exact solution sampled on the same nodes.
 */
export class Solution {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly exact: Float64Array;
    readonly maxError: number;
    readonly oscillations: number;
    readonly x: Float64Array;
    readonly y: Float64Array;
}

/**
 * Error column of a sweep for a single ε.
 */
export class SweepColumn {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly errors: Float64Array;
    readonly ks: Uint32Array;
    /**
     * Orders per row; the last row has none and reads NaN.
     */
    readonly orders: Float64Array;
}

export function shishkinMesh(n: number, epsilon: number, mesh_order: number, layer_constant: number): Float64Array;

export function solve(problem: string, scheme: string, mesh_kind: string, n: number, epsilon: number): Solution;

export function sweep(problem: string, scheme: string, epsilon: number, k_min: number, k_max: number): SweepColumn;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_solution_free: (a: number, b: number) => void;
    readonly __wbg_sweepcolumn_free: (a: number, b: number) => void;
    readonly shishkinMesh: (a: number, b: number, c: number, d: number) => [number, number, number, number];
    readonly solution_exact: (a: number) => [number, number];
    readonly solution_maxError: (a: number) => number;
    readonly solution_oscillations: (a: number) => number;
    readonly solution_x: (a: number) => [number, number];
    readonly solution_y: (a: number) => [number, number];
    readonly solve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
    readonly sweep: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
    readonly sweepcolumn_errors: (a: number) => [number, number];
    readonly sweepcolumn_ks: (a: number) => [number, number];
    readonly sweepcolumn_orders: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
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
