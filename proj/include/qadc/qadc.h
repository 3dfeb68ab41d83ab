// Copyright 2026 The qadc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the qadc library. All handles are opaque; every call
 * returns a qadc_status and, on failure, records a "stage: message" string
 * readable through qadc_last_error() on the calling thread. */
#ifndef QADC_QADC_H_
#define QADC_QADC_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QADC_BUILDING_LIBRARY)
#    define QADC_API __declspec(dllexport)
#  else
#    define QADC_API __declspec(dllimport)
#  endif
#else
#  define QADC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qadc_status {
  QADC_OK = 0,
  QADC_ERR_INVALID_ARGUMENT = 1,
  QADC_ERR_LEAKAGE = 2,
  QADC_ERR_NOT_UNITARY = 3,
  QADC_ERR_DIMENSION = 4,
  QADC_ERR_PRECONDITION = 5,
  QADC_ERR_IO = 6,
  QADC_ERR_INTERNAL = 100
} qadc_status;

QADC_API const char* qadc_version(void);
QADC_API const char* qadc_status_string(qadc_status status);
/* Message of the last failed call on this thread, "" if none. */
QADC_API const char* qadc_last_error(void);

typedef struct qadc_wave qadc_wave;

/* text: "gaussian[:center=..,width=..]", "hermite[:center=..,width=..,m=..]",
 * "sine_bump" or "flat". */
QADC_API qadc_status qadc_wave_parse(const char* text, double length, qadc_wave** out);
QADC_API void qadc_wave_destroy(qadc_wave* wave);
QADC_API qadc_status qadc_wave_deriv_norm(const qadc_wave* wave, double* out);

typedef struct qadc_run_config {
  double length;
  size_t grid_points; /* 0: library default for n */
  double kappa;
  double leak_tol;
  unsigned threads;   /* 0: QADC_THREADS or hardware concurrency */
} qadc_run_config;

QADC_API void qadc_run_config_defaults(qadc_run_config* cfg);

typedef struct qadc_report {
  int n;
  double length;
  size_t grid_points;
  double trace_dist;
  double fidelity_pure;
  double schmidt_top;
  double appendix_bound;
  double b_estimate;
  double elapsed;
  int end_vanishing_ok;
} qadc_report;

QADC_API qadc_status qadc_ad_convert(const qadc_wave* wave, int n, const qadc_run_config* cfg, qadc_report* out);

/* rows and slope_running must hold n_max - n_min + 1 entries. slope_running[0]
 * is NaN. slope may be NULL. */
QADC_API qadc_status qadc_error_sweep(const qadc_wave* wave, int n_min, int n_max, const qadc_run_config* cfg,
                                      qadc_report* rows, double* slope_running, double* slope);

typedef struct qadc_roundtrip_report {
  int n;
  double fidelity_l2;
  double schmidt_top;
  double appendix_bound;
  int warning;
} qadc_roundtrip_report;

QADC_API qadc_status qadc_roundtrip(const qadc_wave* wave, int n, const qadc_run_config* cfg,
                                    qadc_roundtrip_report* out);

QADC_API qadc_status qadc_dirichlet_g(double y, int n, double* re, double* im);

/* samples equally spaced points on [-0.5, 0.5], endpoints included.
 * Requires samples >= 8 * 2^n. Any output pointer may be NULL. */
QADC_API qadc_status qadc_gfunc_table(int n, size_t samples, double* y, double* re, double* im);

typedef struct qadc_pulse_config {
  int n_qubits;
  size_t grid_points;
  double half_box;
  double coupling;
  double total_time;
  int samples;
  int substeps;
  uint64_t seed;
} qadc_pulse_config;

QADC_API void qadc_pulse_config_defaults(qadc_pulse_config* cfg);

typedef struct qadc_pulse_row {
  double dt;
  double error_bt;
  double error_decouple;
  double ratio; /* NaN in the first row */
} qadc_pulse_row;

QADC_API qadc_status qadc_pulse_scan(const qadc_pulse_config* cfg, const double* dts, size_t count,
                                     qadc_pulse_row* rows);

#ifdef __cplusplus
}
#endif

#endif /* QADC_QADC_H_ */
