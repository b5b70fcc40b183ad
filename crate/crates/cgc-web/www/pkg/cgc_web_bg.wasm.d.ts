/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_mesh_free: (a: number, b: number) => void;
export const mesh_curvature_deviation: (a: number) => number;
export const mesh_max_imag: (a: number) => number;
export const mesh_nx: (a: number) => number;
export const mesh_ny: (a: number) => number;
export const mesh_positions: (a: number) => [number, number];
export const pseudosphere: (a: number, b: number, c: number, d: number, e: number) => [number, number, number];
export const real_dressing: (a: number, b: number, c: number, d: number, e: number, f: number, g: number) => [number, number, number];
export const seed_surface: (a: number, b: number, c: number, d: number) => [number, number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_start: () => void;
