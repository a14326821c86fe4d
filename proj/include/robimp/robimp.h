/*------------------------------------------------------------------------------
//
//   Copyright 2026 The robimp Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//----------------------------------------------------------------------------*/
#ifndef ROBIMP_ROBIMP_H
#define ROBIMP_ROBIMP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(ROBIMP_BUILDING)
#    define ROBIMP_API __declspec(dllexport)
#  else
#    define ROBIMP_API __declspec(dllimport)
#  endif
#else
#  define ROBIMP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum robimp_status
{
  ROBIMP_OK                  = 0,
  ROBIMP_E_INVALID_ARGUMENT  = 1,
  ROBIMP_E_DIMENSION         = 2,
  ROBIMP_E_INFEASIBLE        = 3,
  ROBIMP_E_NON_GENERIC       = 4,
  ROBIMP_E_ZERO_PROBABILITY  = 5,
  ROBIMP_E_PRECONDITION      = 6,
  ROBIMP_E_PARSE             = 7,
  ROBIMP_E_IO                = 8,
  ROBIMP_E_INTERNAL          = 99
} robimp_status;

typedef struct robimp_scenario  robimp_scenario;
typedef struct robimp_mechanism robimp_mechanism;
typedef struct robimp_result    robimp_result;

/* Message of the last failed call on this thread; empty after success. */
ROBIMP_API const char *robimp_last_error(void);
ROBIMP_API const char *robimp_status_name(robimp_status status);
ROBIMP_API const char *robimp_version(void);

/* Strings returned through char** out-parameters are owned by the caller. */
ROBIMP_API void robimp_string_free(char *text);

/* Scenarios: YAML documents with optional perturbation, eta_grid and seed. */
ROBIMP_API robimp_status robimp_scenario_load(const char *path, robimp_scenario **out);
ROBIMP_API robimp_status robimp_scenario_parse(const char *text, robimp_scenario **out);
ROBIMP_API robimp_status robimp_scenario_json(const robimp_scenario *scenario, char **out);
ROBIMP_API void          robimp_scenario_free(robimp_scenario *scenario);

/* kind: maskin, sqr, asqr or msqr. params_json may be NULL or an object with
   "cost_bound" (sqr) and "reward" (maskin) as rational strings. */
ROBIMP_API robimp_status robimp_mechanism_build(const robimp_scenario *scenario, const char *kind,
                                                const char *params_json, robimp_mechanism **out);
ROBIMP_API robimp_status robimp_mechanism_parse_table(const robimp_scenario *scenario, const char *text,
                                                      robimp_mechanism **out);
ROBIMP_API robimp_status robimp_mechanism_table(const robimp_mechanism *mechanism,
                                                const robimp_scenario *scenario, char **out);
/* Reward constraints (when the schedule is known) and the dominance threshold. */
ROBIMP_API robimp_status robimp_mechanism_check(const robimp_mechanism *mechanism,
                                                const robimp_scenario *scenario, char **out);
ROBIMP_API void          robimp_mechanism_free(robimp_mechanism *mechanism);

/* Game operations. options_json may be NULL or an object with
     "variant":  "full", "status-quo" or "signed" (default by mechanism kind)
     "perturbed": bool, use the scenario's perturbation block (default true when present)
     "eta":      rational string overriding the perturbation's eta
     "profile":  "truthful" or [[agent 1 messages], [agent 2 messages]]
     "cost":     rational string, learning cost for the dominance threshold
   and results are JSON documents. */
ROBIMP_API robimp_status robimp_equilibrium_check(const robimp_scenario *scenario, const robimp_mechanism *mechanism,
                                                  const char *options_json, char **out);
ROBIMP_API robimp_status robimp_equilibrium_br_iterate(const robimp_scenario  *scenario,
                                                       const robimp_mechanism *mechanism, const char *options_json,
                                                       char **out);
ROBIMP_API robimp_status robimp_dominance_gamma(const robimp_scenario *scenario, const robimp_mechanism *mechanism,
                                                const char *options_json, char **out);
ROBIMP_API robimp_status robimp_dominance_eliminate(const robimp_scenario *scenario, const robimp_mechanism *mechanism,
                                                    const char *options_json, char **out);

/* Experiments. */
ROBIMP_API size_t      robimp_experiment_count(void);
ROBIMP_API const char *robimp_experiment_name(size_t index);

/* scenario may be NULL for the built-in instance. options_json may be NULL or
   an object with "eta_grid" (list of rational strings), "seed" and "depth";
   these override values from the scenario file. */
ROBIMP_API robimp_status robimp_experiment_run(const char *name, const robimp_scenario *scenario,
                                               const char *options_json, robimp_result **out);
ROBIMP_API int           robimp_result_passed(const robimp_result *result);
ROBIMP_API robimp_status robimp_result_json(const robimp_result *result, char **out);
ROBIMP_API robimp_status robimp_result_csv(const robimp_result *result, char **out);
ROBIMP_API void          robimp_result_free(robimp_result *result);

#ifdef __cplusplus
}
#endif

#endif /* ROBIMP_ROBIMP_H */
