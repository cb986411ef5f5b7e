/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_solution_free: (a: number, b: number) => void;
export const __wbg_sweepcolumn_free: (a: number, b: number) => void;
export const shishkinMesh: (a: number, b: number, c: number, d: number) => [number, number, number, number];
export const solution_exact: (a: number) => [number, number];
export const solution_maxError: (a: number) => number;
export const solution_oscillations: (a: number) => number;
export const solution_x: (a: number) => [number, number];
export const solution_y: (a: number) => [number, number];
export const solve: (a: number, b: number, c: number, d: number, e: number, f: number, g: number, h: number) => [number, number, number];
export const sweep: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const sweepcolumn_errors: (a: number) => [number, number];
export const sweepcolumn_ks: (a: number) => [number, number];
export const sweepcolumn_orders: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
