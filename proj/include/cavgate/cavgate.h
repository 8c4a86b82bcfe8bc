// Copyright 2026 The cavgate Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/* C interface to the cavgate simulator. All strings are UTF-8 and owned by
 * the handle they came from; they stay valid until the next call on it. */
#ifndef CAVGATE_CAVGATE_H_
#define CAVGATE_CAVGATE_H_

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define CG_API __declspec(dllexport)
#else
#define CG_API __attribute__((visibility("default")))
#endif

typedef enum cg_status {
  CG_OK = 0,
  CG_ERR_CONFIG = 1,   /* malformed or unknown configuration */
  CG_ERR_NUMERIC = 2,  /* divergence, undefined phase, degenerate input */
  CG_ERR_ARGUMENT = 3, /* null handle or out-of-range argument */
  CG_ERR_IO = 4,
  CG_ERR_INTERNAL = 5
} cg_status;

typedef struct cg_session cg_session;
typedef struct cg_gate_report cg_gate_report;

CG_API const char* cg_version(void);
CG_API const char* cg_status_string(cg_status status);

CG_API cg_status cg_session_create(cg_session** out);
CG_API void cg_session_destroy(cg_session* session);

/* Message for the last failing call on this session ("" after success). */
CG_API const char* cg_session_last_error(const cg_session* session);
/* Text printed by the last successful run. */
CG_API const char* cg_session_output(const cg_session* session);

/* Configuration: a flat key/value map, loaded from file or set directly. */
CG_API cg_status cg_session_load_config(cg_session* session, const char* path);
CG_API cg_status cg_session_set(cg_session* session, const char* key, const char* value);
CG_API cg_status cg_session_clear(cg_session* session);

CG_API cg_status cg_session_set_threads(cg_session* session, int threads);
CG_API cg_status cg_session_set_nmax(cg_session* session, int n_max);
/* step <= 0 selects the default step. */
CG_API cg_status cg_session_set_step(cg_session* session, double step);
CG_API cg_status cg_session_set_output_dir(cg_session* session, const char* dir);
/* Grid points per axis for figures; <= 0 selects the figure default. */
CG_API cg_status cg_session_set_resolution(cg_session* session, int resolution);

CG_API cg_status cg_run_evolve(cg_session* session);
/* On success *fidelity and *p0 are set when non-null. */
CG_API cg_status cg_run_prep(cg_session* session, double* fidelity, double* p0);
/* *report receives a new handle owned by the caller; may be null. */
CG_API cg_status cg_run_gate(cg_session* session, cg_gate_report** report);
CG_API cg_status cg_run_sweep(cg_session* session, const char* csv_path);
CG_API cg_status cg_run_figure(cg_session* session, const char* fig_id);

CG_API void cg_gate_report_destroy(cg_gate_report* report);
CG_API const char* cg_gate_report_text(const cg_gate_report* report);
CG_API cg_status cg_gate_report_phase(const cg_gate_report* report, double* extracted, double* target);
/* renormalized != 0 selects fidelities of the renormalized branches. */
CG_API cg_status cg_gate_report_fidelity(const cg_gate_report* report, int renormalized,
                                         double* vs_extracted, double* vs_target);
/* branch: 0..3 for 00, 01, 10, 11. */
CG_API cg_status cg_gate_report_branch(const cg_gate_report* report, int branch, double* re, double* im,
                                       double* p0, double* leakage);
CG_API int cg_gate_report_warning_count(const cg_gate_report* report);
CG_API const char* cg_gate_report_warning(const cg_gate_report* report, int index);

#ifdef __cplusplus
}
#endif

#endif /* CAVGATE_CAVGATE_H_ */
