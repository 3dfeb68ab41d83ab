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

#include "qadc/qadc.h"

#include <cmath>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "qadc/conversion.hpp"
#include "qadc/error.hpp"
#include "qadc/mode.hpp"
#include "qadc/pulse.hpp"

struct qadc_wave {
  qadc::WaveSpec spec;
};

namespace {

thread_local std::string last_error;

qadc_status fail(qadc_status s, std::string msg) {
  last_error = std::move(msg);
  return s;
}

template <class F>
qadc_status guarded(F&& body) {
  try {
    last_error.clear();
    body();
    return QADC_OK;
  } catch (const qadc::Error& e) {
    return fail(static_cast<qadc_status>(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(QADC_ERR_INTERNAL, "alloc: out of memory");
  } catch (const std::exception& e) {
    return fail(QADC_ERR_INTERNAL, std::string("internal: ") + e.what());
  }
}

qadc::ConversionConfig to_core(const qadc_run_config* cfg) {
  qadc::ConversionConfig c;
  if (cfg != nullptr) {
    c.length = cfg->length;
    c.grid_points = cfg->grid_points;
    c.kappa = cfg->kappa;
    c.leak_tol = cfg->leak_tol;
  }
  if (!(c.kappa > 0.0)) throw qadc::Error(qadc::ErrorCode::InvalidArgument, "config", "kappa must be positive");
  if (!(c.leak_tol > 0.0)) throw qadc::Error(qadc::ErrorCode::InvalidArgument, "config", "leak_tol must be positive");
  return c;
}

qadc::WaveSpec checked(const qadc_wave* wave, const qadc::ConversionConfig& cfg) {
  if (wave == nullptr) throw qadc::Error(qadc::ErrorCode::InvalidArgument, "wave", "null wave handle");
  qadc::WaveSpec spec = wave->spec;
  spec.length = cfg.length;
  return spec;
}

void fill(const qadc::ConversionReport& r, qadc_report* out) {
  out->n = r.n;
  out->length = r.length;
  out->grid_points = r.grid_points;
  out->trace_dist = r.trace_dist;
  out->fidelity_pure = r.fidelity_pure;
  out->schmidt_top = r.schmidt_top;
  out->appendix_bound = r.appendix_bound;
  out->b_estimate = r.b_estimate;
  out->elapsed = r.elapsed;
  out->end_vanishing_ok = r.end_vanishing_ok ? 1 : 0;
}

void require(const void* p, const char* what) {
  if (p == nullptr) throw qadc::Error(qadc::ErrorCode::InvalidArgument, "api", std::string(what) + " is null");
}

}  // namespace

extern "C" {

#define QADC_STRINGIFY_(x) #x
#define QADC_STRINGIFY(x) QADC_STRINGIFY_(x)

const char* qadc_version(void) { return QADC_STRINGIFY(QADC_VERSION); }

const char* qadc_status_string(qadc_status status) {
  switch (status) {
    case QADC_OK: return "ok";
    case QADC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QADC_ERR_LEAKAGE: return "leakage";
    case QADC_ERR_NOT_UNITARY: return "not unitary";
    case QADC_ERR_DIMENSION: return "dimension mismatch";
    case QADC_ERR_PRECONDITION: return "precondition violated";
    case QADC_ERR_IO: return "i/o error";
    case QADC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* qadc_last_error(void) { return last_error.c_str(); }

qadc_status qadc_wave_parse(const char* text, double length, qadc_wave** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = nullptr;
    *out = new qadc_wave{qadc::parse_wave(text, length)};
  });
}

void qadc_wave_destroy(qadc_wave* wave) { delete wave; }

qadc_status qadc_wave_deriv_norm(const qadc_wave* wave, double* out) {
  return guarded([&] {
    require(wave, "wave");
    require(out, "out");
    *out = qadc::deriv_l2_norm(wave->spec);
  });
}

void qadc_run_config_defaults(qadc_run_config* cfg) {
  if (cfg == nullptr) return;
  const qadc::ConversionConfig c;
  cfg->length = c.length;
  cfg->grid_points = c.grid_points;
  cfg->kappa = c.kappa;
  cfg->leak_tol = c.leak_tol;
  cfg->threads = 0;
}

qadc_status qadc_ad_convert(const qadc_wave* wave, int n, const qadc_run_config* cfg, qadc_report* out) {
  return guarded([&] {
    require(out, "out");
    const auto c = to_core(cfg);
    fill(qadc::ad_convert(checked(wave, c), n, c).report, out);
  });
}

qadc_status qadc_error_sweep(const qadc_wave* wave, int n_min, int n_max, const qadc_run_config* cfg,
                             qadc_report* rows, double* slope_running, double* slope) {
  return guarded([&] {
    require(rows, "rows");
    require(slope_running, "slope_running");
    const auto c = to_core(cfg);
    const auto table = qadc::error_sweep(checked(wave, c), n_min, n_max, c, cfg != nullptr ? cfg->threads : 0);
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
      fill(table.rows[i], &rows[i]);
      slope_running[i] = table.slope_running[i];
    }
    if (slope != nullptr) *slope = table.slope;
  });
}

qadc_status qadc_roundtrip(const qadc_wave* wave, int n, const qadc_run_config* cfg, qadc_roundtrip_report* out) {
  return guarded([&] {
    require(out, "out");
    const auto c = to_core(cfg);
    const auto r = qadc::roundtrip(checked(wave, c), n, c);
    out->n = r.n;
    out->fidelity_l2 = r.fidelity_l2;
    out->schmidt_top = r.schmidt_top;
    out->appendix_bound = r.appendix_bound;
    out->warning = r.warning ? 1 : 0;
  });
}

qadc_status qadc_dirichlet_g(double y, int n, double* re, double* im) {
  return guarded([&] {
    if (n < 1 || n > 30) throw qadc::Error(qadc::ErrorCode::InvalidArgument, "gfunc", "n out of range [1, 30]");
    const qadc::cplx g = qadc::dirichlet_g(y, n);
    if (re != nullptr) *re = g.real();
    if (im != nullptr) *im = g.imag();
  });
}

qadc_status qadc_gfunc_table(int n, size_t samples, double* y, double* re, double* im) {
  return guarded([&] {
    if (n < 1 || n > 20) throw qadc::Error(qadc::ErrorCode::InvalidArgument, "gfunc", "n out of range [1, 20]");
    const std::size_t min_samples = std::size_t{8} << n;
    if (samples < min_samples) {
      throw qadc::Error(qadc::ErrorCode::InvalidArgument, "gfunc",
                        "need at least " + std::to_string(min_samples) + " samples");
    }
    std::vector<double> ys(samples);
    const double step = 1.0 / static_cast<double>(samples - 1);
    for (std::size_t i = 0; i < samples; ++i) ys[i] = -0.5 + static_cast<double>(i) * step;
    ys.back() = 0.5;
    const auto g = qadc::dirichlet_g(ys, n);
    for (std::size_t i = 0; i < samples; ++i) {
      if (y != nullptr) y[i] = ys[i];
      if (re != nullptr) re[i] = g[i].real();
      if (im != nullptr) im[i] = g[i].imag();
    }
  });
}

void qadc_pulse_config_defaults(qadc_pulse_config* cfg) {
  if (cfg == nullptr) return;
  const qadc::BchScanConfig c;
  cfg->n_qubits = c.n_qubits;
  cfg->grid_points = c.grid_points;
  cfg->half_box = c.half_box;
  cfg->coupling = c.coupling;
  cfg->total_time = c.total_time;
  cfg->samples = c.samples;
  cfg->substeps = c.substeps;
  cfg->seed = c.seed;
}

qadc_status qadc_pulse_scan(const qadc_pulse_config* cfg, const double* dts, size_t count, qadc_pulse_row* rows) {
  return guarded([&] {
    require(cfg, "cfg");
    if (count > 0) {
      require(dts, "dts");
      require(rows, "rows");
    }
    qadc::BchScanConfig c;
    c.n_qubits = cfg->n_qubits;
    c.grid_points = cfg->grid_points;
    c.half_box = cfg->half_box;
    c.coupling = cfg->coupling;
    c.total_time = cfg->total_time;
    c.samples = cfg->samples;
    c.substeps = cfg->substeps;
    c.seed = cfg->seed;
    const auto out = qadc::bch_scan(c, std::span<const double>(dts, count));
    for (std::size_t i = 0; i < out.size(); ++i) rows[i] = {out[i].dt, out[i].error_bt, out[i].error_decouple, out[i].ratio};
  });
}

}  // extern "C"
