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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qadc/qadc.h"

namespace {

using nlohmann::ordered_json;

struct CliError {
  int code;
  std::string message;
};

void check(qadc_status s) {
  if (s != QADC_OK) throw CliError{static_cast<int>(s), qadc_last_error()};
}

std::string num(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

// NaN has no JSON spelling; emit null.
ordered_json jnum(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

struct Options {
  int n = 6;
  int pulse_n = 2;
  int n_min = 3;
  int n_max = 7;
  std::size_t grid = 0;
  double length = 1.0;
  double kappa = 4.0;
  std::string wave = "gaussian";
  std::string dt = "0.1,0.05,0.025,0.0125";
  std::size_t samples = 0;
  std::uint64_t seed = 1;
  std::string out;
  std::string format;
  bool timing = false;
};

using WavePtr = std::unique_ptr<qadc_wave, decltype(&qadc_wave_destroy)>;

WavePtr load_wave(const Options& o) {
  qadc_wave* w = nullptr;
  check(qadc_wave_parse(o.wave.c_str(), o.length, &w));
  return WavePtr(w, &qadc_wave_destroy);
}

qadc_run_config run_config(const Options& o) {
  if (!(o.length > 0.0)) throw CliError{QADC_ERR_INVALID_ARGUMENT, "config: --length must be positive"};
  if (!(o.kappa > 0.0)) throw CliError{QADC_ERR_INVALID_ARGUMENT, "config: --kappa must be positive"};
  if (o.grid != 0 && (o.grid & (o.grid - 1)) != 0) {
    throw CliError{QADC_ERR_INVALID_ARGUMENT, "config: --grid must be a power of two"};
  }
  qadc_run_config c;
  qadc_run_config_defaults(&c);
  c.length = o.length;
  c.grid_points = o.grid;
  c.kappa = o.kappa;
  return c;
}

std::vector<double> parse_dts(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size() || !(v > 0.0)) {
      throw CliError{QADC_ERR_INVALID_ARGUMENT, "config: bad --dt entry '" + item + "'"};
    }
    out.push_back(v);
  }
  if (out.empty()) throw CliError{QADC_ERR_INVALID_ARGUMENT, "config: --dt list is empty"};
  return out;
}

std::string pick_format(const Options& o, const char* fallback) {
  const std::string f = o.format.empty() ? fallback : o.format;
  if (f != "csv" && f != "json") throw CliError{QADC_ERR_INVALID_ARGUMENT, "config: --format must be csv or json"};
  return f;
}

void emit(const Options& o, const std::string& text) {
  if (o.out.empty() || o.out == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  std::ofstream f(o.out, std::ios::binary | std::ios::trunc);
  if (!f) throw CliError{QADC_ERR_IO, "write: cannot open " + o.out};
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  f.close();
  if (!f) throw CliError{QADC_ERR_IO, "write: failed writing " + o.out};
}

// Tabular output: CSV with a header row, or JSON {"columns": [...], "rows": [[...]]}.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string render(const std::string& format) const {
    if (format == "json") {
      ordered_json j;
      j["columns"] = columns;
      j["rows"] = ordered_json::array();
      for (const auto& r : rows) {
        ordered_json row = ordered_json::array();
        for (double v : r) row.push_back(jnum(v));
        j["rows"].push_back(row);
      }
      return j.dump(2) + "\n";
    }
    std::string s;
    for (std::size_t i = 0; i < columns.size(); ++i) s += (i ? "," : "") + columns[i];
    s += "\n";
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) s += (i ? "," : "") + num(r[i]);
      s += "\n";
    }
    return s;
  }
};

std::string render_object(const ordered_json& j, const std::string& format) {
  if (format == "json") return j.dump(2) + "\n";
  std::string head, row;
  bool first = true;
  for (const auto& [k, v] : j.items()) {
    head += (first ? "" : ",") + k;
    std::string cell;
    if (v.is_boolean()) {
      cell = v.get<bool>() ? "1" : "0";
    } else if (v.is_number()) {
      cell = v.is_number_float() ? num(v.get<double>()) : std::to_string(v.get<long long>());
    } else if (v.is_null()) {
      cell = "nan";
    } else {
      cell = v.dump();
    }
    row += (first ? "" : ",") + cell;
    first = false;
  }
  return head + "\n" + row + "\n";
}

void cmd_gfunc(const Options& o) {
  const std::size_t samples = o.samples != 0 ? o.samples : (std::size_t{8} << o.n) + 1;
  std::vector<double> y(samples), re(samples), im(samples);
  check(qadc_gfunc_table(o.n, samples, y.data(), re.data(), im.data()));
  Table t{{"y", "re_g", "im_g", "abs2"}, {}};
  for (std::size_t i = 0; i < samples; ++i) t.rows.push_back({y[i], re[i], im[i], re[i] * re[i] + im[i] * im[i]});
  emit(o, t.render(pick_format(o, "csv")));
}

ordered_json report_json(const qadc_report& r, bool timing) {
  ordered_json j;
  j["n"] = r.n;
  j["L"] = r.length;
  j["grid_points"] = r.grid_points;
  j["trace_dist"] = jnum(r.trace_dist);
  j["fidelity_pure"] = jnum(r.fidelity_pure);
  j["schmidt_top"] = jnum(r.schmidt_top);
  j["appendix_bound"] = jnum(r.appendix_bound);
  j["b_estimate"] = jnum(r.b_estimate);
  j["elapsed"] = timing ? r.elapsed : 0.0;
  return j;
}

void cmd_convert(const Options& o) {
  const auto wave = load_wave(o);
  const auto cfg = run_config(o);
  qadc_report r{};
  check(qadc_ad_convert(wave.get(), o.n, &cfg, &r));
  emit(o, render_object(report_json(r, o.timing), pick_format(o, "json")));
}

void cmd_sweep(const Options& o) {
  if (o.n_min < 2 || o.n_max < o.n_min) {
    throw CliError{QADC_ERR_INVALID_ARGUMENT, "config: need 2 <= --n-min <= --n-max"};
  }
  const auto wave = load_wave(o);
  const auto cfg = run_config(o);
  const auto count = static_cast<std::size_t>(o.n_max - o.n_min + 1);
  std::vector<qadc_report> rows(count);
  std::vector<double> running(count);
  check(qadc_error_sweep(wave.get(), o.n_min, o.n_max, &cfg, rows.data(), running.data(), nullptr));
  Table t{{"n", "trace_dist", "appendix_bound", "b_estimate", "slope_running"}, {}};
  for (std::size_t i = 0; i < count; ++i) {
    t.rows.push_back({static_cast<double>(rows[i].n), rows[i].trace_dist, rows[i].appendix_bound, rows[i].b_estimate,
                      running[i]});
  }
  emit(o, t.render(pick_format(o, "csv")));
}

void cmd_roundtrip(const Options& o) {
  const auto wave = load_wave(o);
  const auto cfg = run_config(o);
  qadc_roundtrip_report r{};
  check(qadc_roundtrip(wave.get(), o.n, &cfg, &r));
  if (r.warning) {
    std::cerr << "qadc roundtrip: warning: appendix bound " << num(r.appendix_bound)
              << " >= 1, n is too small for this wave's smoothness\n";
  }
  ordered_json j;
  j["n"] = r.n;
  j["L"] = o.length;
  j["fidelity_l2"] = jnum(r.fidelity_l2);
  j["schmidt_top"] = jnum(r.schmidt_top);
  j["appendix_bound"] = jnum(r.appendix_bound);
  j["warning"] = r.warning != 0;
  emit(o, render_object(j, pick_format(o, "json")));
}

void cmd_pulse(const Options& o) {
  qadc_pulse_config cfg;
  qadc_pulse_config_defaults(&cfg);
  cfg.n_qubits = o.pulse_n;
  if (o.grid != 0) cfg.grid_points = o.grid;
  if (cfg.grid_points == 0 || (cfg.grid_points & (cfg.grid_points - 1)) != 0) {
    throw CliError{QADC_ERR_INVALID_ARGUMENT, "config: --grid must be a power of two"};
  }
  cfg.seed = o.seed;
  const auto dts = parse_dts(o.dt);
  std::vector<qadc_pulse_row> rows(dts.size());
  check(qadc_pulse_scan(&cfg, dts.data(), dts.size(), rows.data()));
  Table t{{"dt", "error_bT", "error_decouple", "ratio"}, {}};
  for (const auto& r : rows) t.rows.push_back({r.dt, r.error_bt, r.error_decouple, r.ratio});
  emit(o, t.render(pick_format(o, "csv")));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qadc: analog/digital conversion of a continuous-variable quantum mode"};
  app.set_version_flag("--version", qadc_version());
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool wave) {
    sub->add_option("--out", o.out, "Output file (default: stdout)");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    if (wave) {
      sub->add_option("--grid", o.grid, "Grid points on [-L, 2L] (power of two; 0 = default)");
      sub->add_option("--length", o.length, "Interval length L");
      sub->add_option("--kappa", o.kappa, "Window half-width in units of L/2^n");
      sub->add_option("--wave", o.wave, "family[:key=value,...]");
      sub->add_flag("--timing", o.timing, "Record wall-clock time (breaks byte-identical output)");
    }
  };

  auto* gfunc = app.add_subcommand("gfunc", "Sample the Dirichlet kernel g on [-1/2, 1/2]");
  gfunc->add_option("--n", o.n, "Register qubits")->check(CLI::Range(1, 20));
  gfunc->add_option("--samples", o.samples, "Row count (default 8*2^n + 1)");
  common(gfunc, false);

  auto* convert = app.add_subcommand("convert", "Run the analog-to-digital pipeline");
  convert->add_option("--n", o.n, "Register qubits");
  common(convert, true);

  auto* sweep = app.add_subcommand("sweep", "Trace distance against n");
  sweep->add_option("--n-min", o.n_min, "Smallest n (>= 2)");
  sweep->add_option("--n-max", o.n_max, "Largest n");
  common(sweep, true);

  auto* roundtrip = app.add_subcommand("roundtrip", "Digital-to-analog reconstruction of the ideal register");
  roundtrip->add_option("--n", o.n, "Register qubits");
  common(roundtrip, true);

  auto* pulse = app.add_subcommand("pulse", "Bang-bang decoupling error against dt");
  pulse->add_option("--n", o.pulse_n, "Qubits (<= 4)");
  pulse->add_option("--grid", o.grid, "Mode grid points (default 64)");
  pulse->add_option("--dt", o.dt, "Comma-separated pulse intervals");
  pulse->add_option("--seed", o.seed, "Probe-state seed");
  common(pulse, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  const CLI::App* active = app.get_subcommands().front();
  try {
    if (active == gfunc) cmd_gfunc(o);
    else if (active == convert) cmd_convert(o);
    else if (active == sweep) cmd_sweep(o);
    else if (active == roundtrip) cmd_roundtrip(o);
    else if (active == pulse) cmd_pulse(o);
  } catch (const CliError& e) {
    std::cerr << "qadc " << active->get_name() << ": " << e.message << "\n";
    return e.code != 0 ? e.code : 1;
  }
  return 0;
}
