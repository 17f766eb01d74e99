#ifndef STEANE_FT_H
#define STEANE_FT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Values accepted by `block` parameters.
 */
typedef enum SteaneFtBlock {
  STEANE_FT_BLOCK_DATA = 0,
  STEANE_FT_BLOCK_AUXILIARY = 1,
} SteaneFtBlock;

/**
 * Values accepted by `gate_class` parameters.
 */
typedef enum SteaneFtGateClass {
  STEANE_FT_GATE_CLASS_TRANSVERSAL = 0,
  STEANE_FT_GATE_CLASS_T = 1,
  STEANE_FT_GATE_CLASS_TOFFOLI1 = 2,
  STEANE_FT_GATE_CLASS_TOFFOLI2 = 3,
  STEANE_FT_GATE_CLASS_TOFFOLI3 = 4,
} SteaneFtGateClass;

/**
 * Values accepted by `gate` parameters.
 */
typedef enum SteaneFtLogicalGate {
  STEANE_FT_LOGICAL_GATE_TRANSVERSAL = 0,
  STEANE_FT_LOGICAL_GATE_T = 1,
  STEANE_FT_LOGICAL_GATE_TOFFOLI = 2,
} SteaneFtLogicalGate;

typedef enum SteaneFtStatus {
  STEANE_FT_STATUS_OK = 0,
  STEANE_FT_STATUS_NULL_POINTER = 1,
  STEANE_FT_STATUS_INVALID_ARGUMENT = 2,
  STEANE_FT_STATUS_PARSE = 3,
  STEANE_FT_STATUS_INVALID_CIRCUIT = 4,
  STEANE_FT_STATUS_BUFFER_TOO_SMALL = 5,
  STEANE_FT_STATUS_PANIC = 6,
} SteaneFtStatus;

/**
 * Opaque circuit handle.
 */
typedef struct SteaneFtCircuit SteaneFtCircuit;

/**
 * Opaque single-fault propagator bound to one circuit.
 */
typedef struct SteaneFtEngine SteaneFtEngine;

typedef struct SteaneFtDepth {
  uint32_t r[7];
  uint32_t gamma;
} SteaneFtDepth;

typedef struct SteaneFtThreshold {
  uint32_t k;
  uint32_t x_star;
  double c;
  double p_th;
} SteaneFtThreshold;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Library version as a static NUL-terminated string.
 */
const char *steane_ft_version(void);

/**
 * Copies the calling thread's last error message into `buf`.
 *
 * Returns the size the message needs including the NUL; the copy is
 * truncated when `len` is smaller.
 *
 * # Safety
 * `buf` must be null or point to `len` writable bytes.
 */
size_t steane_ft_last_error(char *buf, size_t len);

/**
 * Builds one error-correction period for `block` (see [`SteaneFtBlock`]).
 *
 * # Safety
 * `out` must be a valid pointer to writable storage.
 */
enum SteaneFtStatus steane_ft_circuit_build(uint32_t block,
                                            bool flags,
                                            struct SteaneFtCircuit **out);

/**
 * Parses a circuit from the text format.
 *
 * # Safety
 * `text` must be a NUL-terminated string; `out` must be writable.
 */
enum SteaneFtStatus steane_ft_circuit_parse(const char *text, struct SteaneFtCircuit **out);

/**
 * # Safety
 * `circuit` must come from this library and not be used afterwards; null is ignored.
 */
void steane_ft_circuit_free(struct SteaneFtCircuit *circuit);

/**
 * # Safety
 * Pointers must be valid.
 */
enum SteaneFtStatus steane_ft_circuit_num_qubits(const struct SteaneFtCircuit *circuit,
                                                 size_t *out);

/**
 * CNOTs of the period, resource-state preparation and repeated rounds excluded.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SteaneFtStatus steane_ft_circuit_cnot_count(const struct SteaneFtCircuit *circuit,
                                                 size_t *out);

/**
 * Derives the ledgers and per-qubit R coefficients of a period.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SteaneFtStatus steane_ft_circuit_block_depth(const struct SteaneFtCircuit *circuit,
                                                  uint32_t gamma,
                                                  struct SteaneFtDepth *out);

/**
 * Sets `out` when every flag gadget meets all three placement conditions.
 *
 * # Safety
 * Pointers must be valid.
 */
enum SteaneFtStatus steane_ft_circuit_flags_passed(const struct SteaneFtCircuit *circuit,
                                                   bool *out);

/**
 * # Safety
 * `circuit` must be valid; `out` must be writable.
 */
enum SteaneFtStatus steane_ft_engine_new(const struct SteaneFtCircuit *circuit,
                                         struct SteaneFtEngine **out);

/**
 * # Safety
 * `engine` must come from this library and not be used afterwards; null is ignored.
 */
void steane_ft_engine_free(struct SteaneFtEngine *engine);

/**
 * Decoded data residual of one named fault such as `"X25C"`, written as `"X7"`.
 *
 * `needed` (optional) receives the buffer size the answer requires.
 *
 * # Safety
 * `engine` and `location` must be valid; `buf` must hold `len` bytes.
 */
enum SteaneFtStatus steane_ft_engine_residual(const struct SteaneFtEngine *engine,
                                              const char *location,
                                              char *buf,
                                              size_t len,
                                              size_t *needed);

/**
 * Best period depth for level `k`; a non-finite `r` means unboundedly many periods.
 *
 * # Safety
 * `depth` and `out` must be valid.
 */
enum SteaneFtStatus steane_ft_optimize_x(const struct SteaneFtDepth *depth,
                                         uint32_t k,
                                         double r,
                                         uint32_t gate_class,
                                         uint32_t x_max,
                                         struct SteaneFtThreshold *out);

/**
 * CNOTs in one period of `gate` (see [`SteaneFtLogicalGate`]) at level `k`.
 *
 * # Safety
 * `out` must be writable.
 */
enum SteaneFtStatus steane_ft_cnot_count(uint32_t gate, uint32_t k, uint64_t *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STEANE_FT_H */
