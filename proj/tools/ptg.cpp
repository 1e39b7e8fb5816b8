// ptg: command line front end for the spectral toolkit. Subcommands sweep the
// gain/loss parameter, report sector data, locate coalescence points, verify
// completeness and symmetry identities, and export band surfaces. Output is
// CSV or JSON with a versioned schema; byte-identical for identical input.
//
// Exit status: 0 all checks pass, 2 usage or configuration error,
// 3 tolerance violation (the worst offender is named on stderr).

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <future>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ptg/biortho.hpp"
#include "ptg/bloch.hpp"
#include "ptg/dirac.hpp"
#include "ptg/errors.hpp"
#include "ptg/finite_biortho.hpp"
#include "ptg/fock.hpp"
#include "ptg/spectrum.hpp"
#include "ptg/symmetry.hpp"

namespace {

using json = nlohmann::json;
using ptg::Complex;

constexpr int kSchemaVersion = 1;

// ---------------------------------------------------------------------------
// Formatting and serialization helpers.

std::string fmt17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json cjson(Complex z) { return json{{"re", z.real()}, {"im", z.imag()}}; }

std::string bool_cell(bool b) { return b ? "1" : "0"; }

struct Table {
  std::string command;
  std::vector<std::string> columns;            // CSV header, fixed order
  std::vector<std::vector<std::string>> cells;  // CSV body, pre-formatted
  json rows = json::array();                   // JSON body, nested objects
  json config = json::object();                // echoed configuration
  json extra = json::object();                 // command-specific additions
};

std::string render_csv(const Table& t) {
  std::string out = "# schema_version=" + std::to_string(kSchemaVersion) + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    out += (i ? "," : "") + t.columns[i];
  }
  out += "\n";
  for (const auto& row : t.cells) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      out += (i ? "," : "") + row[i];
    }
    out += "\n";
  }
  return out;
}

std::string render_json(const Table& t) {
  json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["command"] = t.command;
  doc["config"] = t.config;
  doc["rows"] = t.rows;
  for (auto it = t.extra.begin(); it != t.extra.end(); ++it) {
    doc[it.key()] = it.value();
  }
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Tolerance bookkeeping. Residual checks compare a value against a bound;
// condition checks assert a structural expectation. The first finish() call
// reports the worst offender and fixes the exit status.

struct Checker {
  bool failed = false;
  std::string worst;
  double worst_value = 0.0;
  double worst_bound = 0.0;
  bool worst_is_condition = false;
  double worst_ratio = 0.0;

  bool expect(const std::string& name, double value, double bound) {
    if (value <= bound) return true;
    const double ratio =
        bound > 0.0 ? value / bound : std::numeric_limits<double>::infinity();
    if (!failed || ratio > worst_ratio) {
      worst = name;
      worst_value = value;
      worst_bound = bound;
      worst_is_condition = false;
      worst_ratio = ratio;
    }
    failed = true;
    return false;
  }

  bool require(const std::string& name, bool ok) {
    if (ok) return true;
    if (!failed) {
      worst = name;
      worst_is_condition = true;
      worst_ratio = std::numeric_limits<double>::infinity();
    }
    failed = true;
    return false;
  }

  int finish() const {
    if (!failed) return 0;
    if (worst_is_condition) {
      std::fprintf(stderr, "check failed: %s\n", worst.c_str());
    } else {
      std::fprintf(stderr, "tolerance violation: %s = %s exceeds %s\n", worst.c_str(),
                   fmt17(worst_value).c_str(), fmt17(worst_bound).c_str());
    }
    return 3;
  }
};

// ---------------------------------------------------------------------------
// Shared options.

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOpts {
  std::string cone = "K";
  std::string field = "+";
  double V = 0.0;
  std::string v_grid;  // "start:stop:step", spectrum and ep-scan only
  int n2_max = 64;
  int n1_max = 0;
  double epsilon = 1.0;
  double tol_ep = ptg::kDefaultTolEp;
  double tol_zero = ptg::kDefaultTolZero;
  std::string format = "csv";
  std::string out;
};

struct BandOpts {
  double t1 = 1.0;
  double kx_min = -2.0 * std::numbers::pi, kx_max = 2.0 * std::numbers::pi;
  double ky_min = -2.0 * std::numbers::pi, ky_max = 2.0 * std::numbers::pi;
  int nx = 33, ny = 33;
};

struct DimerOpts {
  double g = 1.0;
};

ptg::Cone parse_cone(const std::string& s) {
  return s == "K" ? ptg::Cone::K : ptg::Cone::KPrime;
}

ptg::FieldSign parse_field(const std::string& s) {
  return (s == "+" || s == "plus") ? ptg::FieldSign::Positive : ptg::FieldSign::Negative;
}

ptg::DiracModel make_model(const CommonOpts& o) {
  return ptg::DiracModel(parse_cone(o.cone), parse_field(o.field), o.V, o.epsilon);
}

std::vector<double> v_values(const CommonOpts& o) {
  if (o.v_grid.empty()) return {o.V};
  const auto c1 = o.v_grid.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : o.v_grid.find(':', c1 + 1);
  if (c1 == std::string::npos || c2 == std::string::npos) {
    throw UsageError("--V-grid expects start:stop:step, got '" + o.v_grid + "'");
  }
  double start = 0, stop = 0, step = 0;
  try {
    start = std::stod(o.v_grid.substr(0, c1));
    stop = std::stod(o.v_grid.substr(c1 + 1, c2 - c1 - 1));
    step = std::stod(o.v_grid.substr(c2 + 1));
  } catch (const std::exception&) {
    throw UsageError("--V-grid expects numeric start:stop:step, got '" + o.v_grid + "'");
  }
  if (!(step > 0.0) || !std::isfinite(start) || !std::isfinite(stop) || stop < start) {
    throw UsageError("--V-grid requires finite start <= stop and step > 0");
  }
  const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> vs(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) vs[static_cast<std::size_t>(i)] = start + step * i;
  return vs;
}

json config_echo(const CommonOpts& o, const std::vector<double>* grid = nullptr) {
  json cfg;
  cfg["cone"] = o.cone;
  cfg["field_sign"] = o.field;
  if (grid) {
    cfg["V_grid"] = *grid;
  } else {
    cfg["V"] = o.V;
  }
  cfg["n2_max"] = o.n2_max;
  cfg["n1_max"] = o.n1_max;
  cfg["epsilon"] = o.epsilon;
  cfg["tol_ep"] = o.tol_ep;
  cfg["tol_zero"] = o.tol_zero;
  return cfg;
}

std::filesystem::path resolve_out(const CommonOpts& o, const std::string& command) {
  if (!o.out.empty()) return o.out;
  const char* env = std::getenv("PTG_OUT_DIR");
  std::filesystem::path dir = (env && *env) ? env : ".";
  return dir / (command + "." + o.format);
}

void write_table(const CommonOpts& o, const Table& t) {
  const std::filesystem::path path = resolve_out(o, t.command);
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open output file '" + path.string() + "'");
  f << (o.format == "json" ? render_json(t) : render_csv(t));
  f.close();
  std::printf("wrote %s (%zu rows)\n", path.string().c_str(), t.cells.size());
}

// Largest eigen-equation residual over the branches present in one sector.
double sector_residual(const ptg::DiracModel& m, const ptg::SectorEigen& sec) {
  double worst = 0.0;
  const auto measure = [&](const std::optional<ptg::Spinor>& v, Complex E, bool dual) {
    if (!v) return;
    ptg::Spinor r = dual ? ptg::apply_adjoint(m, *v) : ptg::apply(m, *v);
    r -= E * *v;
    worst = std::max(worst, ptg::norm(r));
  };
  measure(sec.phi_plus, sec.E_plus, false);
  measure(sec.phi_minus, sec.E_minus, false);
  measure(sec.psi_plus, sec.E_plus, true);
  measure(sec.psi_minus, sec.E_minus, true);
  return worst;
}

// ---------------------------------------------------------------------------
// spectrum: level table over a V sweep, one row per (V, n2).

int cmd_spectrum(const CommonOpts& o) {
  const std::vector<double> grid = v_values(o);

  struct PerV {
    std::vector<ptg::SpectrumRow> rows;
    double worst_residual = 0.0;
  };
  const auto worker = [&](double V) {
    PerV out;
    const ptg::DiracModel m(parse_cone(o.cone), parse_field(o.field), V, o.epsilon);
    out.rows = ptg::spectrum_flow(m, {V}, o.n2_max, o.tol_ep, o.tol_zero);
    for (int l = 0; l <= o.n2_max; ++l) {
      const auto sec = ptg::sector_eigen(m, 0, l, o.tol_ep, o.tol_zero);
      out.worst_residual = std::max(out.worst_residual, sector_residual(m, sec));
    }
    return out;
  };

  std::vector<std::future<PerV>> futures;
  futures.reserve(grid.size());
  for (double V : grid) futures.push_back(std::async(std::launch::async, worker, V));

  Table t;
  t.command = "spectrum";
  t.config = config_echo(o, o.v_grid.empty() ? nullptr : &grid);
  t.columns = {"V",          "n2",         "E_plus_re",   "E_plus_im", "E_minus_re",
               "E_minus_im", "class",      "exists_plus", "exists_minus"};

  Checker check;
  for (std::size_t i = 0; i < futures.size(); ++i) {
    PerV per = futures[i].get();
    check.expect("eigen residual at V=" + fmt17(grid[i]), per.worst_residual,
                 o.tol_zero * o.epsilon);
    for (const auto& r : per.rows) {
      t.cells.push_back({fmt17(r.V), std::to_string(r.landau), fmt17(r.E_plus.real()),
                         fmt17(r.E_plus.imag()), fmt17(r.E_minus.real()),
                         fmt17(r.E_minus.imag()), ptg::to_string(r.region),
                         bool_cell(r.plus_exists), bool_cell(r.minus_exists)});
      json row;
      row["V"] = r.V;
      row["n2"] = r.landau;
      row["E_plus"] = cjson(r.E_plus);
      row["E_minus"] = cjson(r.E_minus);
      row["class"] = ptg::to_string(r.region);
      row["exists_plus"] = r.plus_exists;
      row["exists_minus"] = r.minus_exists;
      t.rows.push_back(std::move(row));
    }
  }
  write_table(o, t);
  return check.finish();
}

// ---------------------------------------------------------------------------
// ep-scan: completeness over a V sweep, one row per V.

int cmd_ep_scan(const CommonOpts& o) {
  const std::vector<double> grid = v_values(o);
  const ptg::TruncationSpec trunc(o.n1_max, o.n2_max);

  const auto worker = [&](double V) {
    const ptg::DiracModel m(parse_cone(o.cone), parse_field(o.field), V, o.epsilon);
    return ptg::completeness_check(m, trunc, std::nullopt, 1e-10, o.tol_ep);
  };
  std::vector<std::future<ptg::CompletenessReport>> futures;
  futures.reserve(grid.size());
  for (double V : grid) futures.push_back(std::async(std::launch::async, worker, V));

  Table t;
  t.command = "ep-scan";
  t.config = config_echo(o, &grid);
  t.columns = {"V",    "complete",    "deficient_n2", "dimension",
               "rank", "smallest_sv", "max_overlap"};

  Checker check;
  for (std::size_t i = 0; i < futures.size(); ++i) {
    const double V = grid[i];
    const ptg::CompletenessReport r = futures[i].get();

    std::optional<int> expected_ep;
    for (int l = 1; l <= o.n2_max; ++l) {
      if (ptg::classify(l, V, o.tol_ep) == ptg::RegionClass::Exceptional) expected_ep = l;
    }
    const std::string tag = " at V=" + fmt17(V);
    check.require("deficiency location matches the coalescing sector" + tag,
                  r.deficient_landau == expected_ep);
    check.require("completeness flag consistent with deficiency" + tag,
                  r.complete == !r.deficient_landau.has_value());
    if (r.witness) check.expect("witness overlap" + tag, r.max_overlap, o.tol_zero);

    t.cells.push_back({fmt17(V), bool_cell(r.complete),
                       r.deficient_landau ? std::to_string(*r.deficient_landau) : "",
                       std::to_string(r.dimension), std::to_string(r.rank),
                       fmt17(r.smallest_singular_value), r.witness ? fmt17(r.max_overlap) : ""});
    json row;
    row["V"] = V;
    row["complete"] = r.complete;
    row["deficient_n2"] = r.deficient_landau ? json(*r.deficient_landau) : json(nullptr);
    row["dimension"] = r.dimension;
    row["rank"] = r.rank;
    row["smallest_sv"] = r.smallest_singular_value;
    row["max_overlap"] = r.witness ? json(r.max_overlap) : json(nullptr);
    t.rows.push_back(std::move(row));
  }
  write_table(o, t);
  return check.finish();
}

// ---------------------------------------------------------------------------
// gram: pairing pattern per sector; zeros are enforced per region.

int cmd_gram(const CommonOpts& o, int n2_single) {
  const ptg::DiracModel m = make_model(o);
  std::vector<int> levels;
  if (n2_single >= 0) {
    levels.push_back(n2_single);
  } else {
    for (int l = 1; l <= o.n2_max; ++l) levels.push_back(l);
  }

  Table t;
  t.command = "gram";
  t.config = config_echo(o);
  t.columns = {"V",     "n2",    "class", "g_pp_re", "g_pp_im", "g_pm_re", "g_pm_im",
               "g_mp_re", "g_mp_im", "g_mm_re", "g_mm_im"};

  Checker check;
  for (int l : levels) {
    if (l < 1) throw UsageError("gram requires n2 >= 1");
    const ptg::GramReport g = ptg::gram(m, 0, l, o.tol_ep);
    const std::string tag = " (n2=" + std::to_string(l) + ")";

    const auto entry_abs = [&](int a, int b) {
      return g.entries[a][b] ? std::abs(*g.entries[a][b]) : 0.0;
    };
    switch (g.region) {
      case ptg::RegionClass::Symmetric:
        check.expect("cross pairing in a symmetric sector" + tag,
                     std::max(entry_abs(0, 1), entry_abs(1, 0)), o.tol_zero);
        break;
      case ptg::RegionClass::Broken:
        check.expect("diagonal pairing in a broken sector" + tag,
                     std::max(entry_abs(0, 0), entry_abs(1, 1)), o.tol_zero);
        break;
      case ptg::RegionClass::Exceptional:
        check.expect("pairing at a coalescence" + tag,
                     std::max(std::max(entry_abs(0, 0), entry_abs(0, 1)),
                              std::max(entry_abs(1, 0), entry_abs(1, 1))),
                     o.tol_zero);
        break;
    }

    std::vector<std::string> cells = {fmt17(o.V), std::to_string(l), ptg::to_string(g.region)};
    json row;
    row["V"] = o.V;
    row["n2"] = l;
    row["class"] = ptg::to_string(g.region);
    const char* names[2][2] = {{"g_pp", "g_pm"}, {"g_mp", "g_mm"}};
    for (int a = 0; a < 2; ++a) {
      for (int b = 0; b < 2; ++b) {
        if (g.entries[a][b]) {
          cells.push_back(fmt17(g.entries[a][b]->real()));
          cells.push_back(fmt17(g.entries[a][b]->imag()));
          row[names[a][b]] = cjson(*g.entries[a][b]);
        } else {
          cells.push_back("");
          cells.push_back("");
          row[names[a][b]] = nullptr;
        }
      }
    }
    t.cells.push_back(std::move(cells));
    t.rows.push_back(std::move(row));
  }
  write_table(o, t);
  return check.finish();
}

// ---------------------------------------------------------------------------
// completeness: one full report at a single V, witness included in JSON.

int cmd_completeness(const CommonOpts& o) {
  const ptg::DiracModel m = make_model(o);
  const ptg::TruncationSpec trunc(o.n1_max, o.n2_max);
  const ptg::CompletenessReport r =
      ptg::completeness_check(m, trunc, std::nullopt, 1e-10, o.tol_ep);

  Table t;
  t.command = "completeness";
  t.config = config_echo(o);
  t.columns = {"V",    "complete",    "deficient_n2", "dimension",  "columns",
               "rank", "smallest_sv", "max_overlap"};
  t.cells.push_back({fmt17(o.V), bool_cell(r.complete),
                     r.deficient_landau ? std::to_string(*r.deficient_landau) : "",
                     std::to_string(r.dimension), std::to_string(r.columns),
                     std::to_string(r.rank), fmt17(r.smallest_singular_value),
                     r.witness ? fmt17(r.max_overlap) : ""});
  json row;
  row["V"] = o.V;
  row["complete"] = r.complete;
  row["deficient_n2"] = r.deficient_landau ? json(*r.deficient_landau) : json(nullptr);
  row["dimension"] = r.dimension;
  row["columns"] = r.columns;
  row["rank"] = r.rank;
  row["smallest_sv"] = r.smallest_singular_value;
  row["max_overlap"] = r.witness ? json(r.max_overlap) : json(nullptr);
  t.rows.push_back(std::move(row));

  if (r.witness) {
    json amps = json::array();
    const auto dump_component = [&](ptg::Component c, const char* name) {
      for (const auto& [idx, val] : r.witness->component(c)) {
        json a;
        a["component"] = name;
        a["n1"] = idx.n1;
        a["n2"] = idx.n2;
        a["value"] = cjson(val);
        amps.push_back(std::move(a));
      }
    };
    dump_component(ptg::Component::Upper, "upper");
    dump_component(ptg::Component::Lower, "lower");
    t.extra["witness"] = std::move(amps);
  }

  Checker check;
  std::optional<int> expected_ep;
  for (int l = 1; l <= o.n2_max; ++l) {
    if (ptg::classify(l, o.V, o.tol_ep) == ptg::RegionClass::Exceptional) expected_ep = l;
  }
  check.require("deficiency location matches the coalescing sector",
                r.deficient_landau == expected_ep);
  check.require("completeness flag consistent with deficiency",
                r.complete == !r.deficient_landau.has_value());
  if (r.witness) check.expect("witness overlap", r.max_overlap, o.tol_zero);
  if (r.complete) {
    check.expect("rank deficit of a complete family",
                 static_cast<double>(r.columns - r.rank), 0.0);
  }
  write_table(o, t);
  return check.finish();
}

// ---------------------------------------------------------------------------
// symmetry: discrete-symmetry identities and breaking offsets at one V.

int cmd_symmetry(const CommonOpts& o) {
  const int N = std::max(1, o.n2_max);
  const ptg::TruncationSpec trunc(N, N);

  const double t_id = ptg::verify_T_identity(o.V, trunc, o.epsilon);
  const double pt_id = ptg::verify_PT_identity(o.V, trunc, o.epsilon);
  const double t_break = ptg::t_breaking_residual(o.V, trunc, o.epsilon);
  const double p_break = ptg::p_breaking_residual(o.V, trunc, o.epsilon);
  const double expected_break = 2.0 * o.epsilon * std::abs(o.V);
  const double break_tol = o.tol_zero * std::max(1.0, expected_break);

  Table t;
  t.command = "symmetry";
  t.config = config_echo(o);
  t.columns = {"name", "value", "target", "tolerance"};
  const auto add = [&](const std::string& name, double value, double target, double tol) {
    t.cells.push_back({name, fmt17(value), fmt17(target), fmt17(tol)});
    json row;
    row["name"] = name;
    row["value"] = value;
    row["target"] = target;
    row["tolerance"] = tol;
    t.rows.push_back(std::move(row));
  };
  add("t_identity", t_id, 0.0, o.tol_zero);
  add("pt_identity", pt_id, 0.0, o.tol_zero);
  add("t_breaking", t_break, expected_break, break_tol);
  add("p_breaking", p_break, expected_break, break_tol);

  Checker check;
  check.expect("time-reversal identity residual", t_id, o.tol_zero);
  check.expect("combined parity/time-reversal identity residual", pt_id, o.tol_zero);
  check.expect("time-reversal breaking offset", std::abs(t_break - expected_break), break_tol);
  check.expect("parity breaking offset", std::abs(p_break - expected_break), break_tol);
  write_table(o, t);
  return check.finish();
}

// ---------------------------------------------------------------------------
// bands: tight-binding surface export with balanced gain/loss.

int cmd_bands(const CommonOpts& o, const BandOpts& b) {
  const ptg::BlochParams p(b.t1, Complex(0.0, o.V), Complex(0.0, -o.V));
  const ptg::KGrid grid(b.kx_min, b.kx_max, b.nx, b.ky_min, b.ky_max, b.ny);
  const auto surface = ptg::band_surface(p, grid);

  Table t;
  t.command = "bands";
  t.config = config_echo(o);
  t.config["t1"] = b.t1;
  t.config["kx_min"] = b.kx_min;
  t.config["kx_max"] = b.kx_max;
  t.config["nx"] = b.nx;
  t.config["ky_min"] = b.ky_min;
  t.config["ky_max"] = b.ky_max;
  t.config["ny"] = b.ny;
  t.columns = {"kx", "ky", "E_plus_re", "E_plus_im", "E_minus_re", "E_minus_im"};

  double worst_pairing = 0.0;
  for (const auto& pt : surface) {
    worst_pairing = std::max(worst_pairing, std::abs(pt.E_plus + pt.E_minus));
    t.cells.push_back({fmt17(pt.k.x()), fmt17(pt.k.y()), fmt17(pt.E_plus.real()),
                       fmt17(pt.E_plus.imag()), fmt17(pt.E_minus.real()),
                       fmt17(pt.E_minus.imag())});
    json row;
    row["kx"] = pt.k.x();
    row["ky"] = pt.k.y();
    row["E_plus"] = cjson(pt.E_plus);
    row["E_minus"] = cjson(pt.E_minus);
    t.rows.push_back(std::move(row));
  }

  Checker check;
  check.expect("structure factor at the K corner", std::abs(ptg::structure_factor(p, ptg::dirac_K())),
               o.tol_zero);
  check.expect("structure factor at the K' corner",
               std::abs(ptg::structure_factor(p, ptg::dirac_KPrime())), o.tol_zero);
  const double scale = std::max(1.0, 3.0 * std::abs(b.t1) + std::abs(o.V));
  check.expect("band pairing E_minus = -E_plus", worst_pairing, o.tol_zero * scale);
  write_table(o, t);
  return check.finish();
}

// ---------------------------------------------------------------------------
// dimer: the two-site gain/loss cell.

int cmd_dimer(const CommonOpts& o, const DimerOpts& d) {
  const ptg::DimerParams params(d.g, o.V);
  const ptg::DimerEigen e = ptg::dimer_eigen(params);
  const ptg::DimerPTReport pt = ptg::dimer_pt_check(params);
  const Eigen::Matrix2cd H = ptg::dimer_matrix(params);

  const double r_plus = (H * e.v_plus - e.E_plus * e.v_plus).norm();
  const double r_minus = (H * e.v_minus - e.E_minus * e.v_minus).norm();
  const double branch_residual =
      pt.phase_residual ? *pt.phase_residual : pt.pairing_residual.value_or(0.0);

  Table t;
  t.command = "dimer";
  t.config = config_echo(o);
  t.config["g"] = d.g;
  t.columns = {"g",          "V",          "class",           "exceptional",
               "E_plus_re",  "E_plus_im",  "E_minus_re",      "E_minus_im",
               "matrix_residual", "phase_residual", "pairing_residual"};
  t.cells.push_back({fmt17(d.g), fmt17(o.V), ptg::to_string(e.region), bool_cell(e.exceptional),
                     fmt17(e.E_plus.real()), fmt17(e.E_plus.imag()), fmt17(e.E_minus.real()),
                     fmt17(e.E_minus.imag()), fmt17(pt.matrix_residual),
                     pt.phase_residual ? fmt17(*pt.phase_residual) : "",
                     pt.pairing_residual ? fmt17(*pt.pairing_residual) : ""});
  json row;
  row["g"] = d.g;
  row["V"] = o.V;
  row["class"] = ptg::to_string(e.region);
  row["exceptional"] = e.exceptional;
  row["E_plus"] = cjson(e.E_plus);
  row["E_minus"] = cjson(e.E_minus);
  row["matrix_residual"] = pt.matrix_residual;
  row["phase_residual"] = pt.phase_residual ? json(*pt.phase_residual) : json(nullptr);
  row["pairing_residual"] = pt.pairing_residual ? json(*pt.pairing_residual) : json(nullptr);
  t.rows.push_back(std::move(row));

  Checker check;
  const double scale = std::max(1.0, d.g + std::abs(o.V));
  check.expect("plus-branch eigen residual", r_plus, o.tol_zero * scale);
  check.expect("minus-branch eigen residual", r_minus, o.tol_zero * scale);
  check.expect("matrix symmetry residual", pt.matrix_residual, o.tol_zero * scale);
  check.expect("eigenvector symmetry residual", branch_residual, o.tol_zero * scale);
  write_table(o, t);
  return check.finish();
}

// ---------------------------------------------------------------------------
// selftest: a fixed cross-check battery; prints one line per check.

int cmd_selftest(const CommonOpts& o) {
  Checker check;
  std::vector<std::array<std::string, 3>> lines;  // name, value, bound

  const auto expect = [&](const std::string& name, double value, double bound) {
    const bool ok = check.expect(name, value, bound);
    std::printf("%s %s (%s <= %s)\n", ok ? "ok  " : "FAIL", name.c_str(), fmt17(value).c_str(),
                fmt17(bound).c_str());
    lines.push_back({name, fmt17(value), fmt17(bound)});
  };
  const auto require = [&](const std::string& name, bool ok) {
    check.require(name, ok);
    std::printf("%s %s\n", ok ? "ok  " : "FAIL", name.c_str());
    lines.push_back({name, ok ? "1" : "0", "1"});
  };

  using ptg::Cone;
  using ptg::FieldSign;

  // Analytic sector data against the operator action.
  {
    const ptg::DiracModel m(Cone::K, FieldSign::Positive, 0.9, 1.0);
    const auto sec = ptg::sector_eigen(m, 0, 3);
    expect("eigen residual (K, V=0.9, n2=3)", sector_residual(m, sec), 1e-12);
    const auto zm = ptg::sector_eigen(m, 0, 0);
    expect("zero mode level (K, V=0.9)", std::abs(zm.E_plus - Complex(0.0, 0.9)), 1e-15);
    require("zero mode one-sidedness (K, V=0.9)",
            zm.phi_plus.has_value() && !zm.phi_minus.has_value());
  }
  {
    const auto [ep, em] = ptg::eigenvalues(2, 0.0, 1.0);
    expect("Hermitian level n2=2", std::abs(ep - Complex(std::sqrt(2.0), 0.0)), 1e-15);
    expect("level pairing n2=2", std::abs(em + ep), 0.0);
  }

  // Pairing pattern on both sides of the threshold.
  {
    const ptg::DiracModel sym(Cone::K, FieldSign::Positive, 0.5, 1.0);
    const auto g = ptg::gram(sym, 0, 2);
    expect("symmetric-sector cross pairing (V=0.5, n2=2)",
           std::max(std::abs(*g.entries[0][1]), std::abs(*g.entries[1][0])), 1e-12);
    const ptg::DiracModel bro(Cone::K, FieldSign::Positive, 1.5, 1.0);
    const auto h = ptg::gram(bro, 0, 1);
    expect("broken-sector diagonal pairing (V=1.5, n2=1)",
           std::max(std::abs(*h.entries[0][0]), std::abs(*h.entries[1][1])), 1e-12);

    const auto act_sym = ptg::intertwiner_action(sym, 0, 1, ptg::Branch::Plus);
    require("metric maps plus onto plus below threshold",
            act_sym.matched == ptg::Branch::Plus);
    expect("metric image alignment (V=0.5, n2=1)", act_sym.parallel_residual, 1e-10);
    const auto act_bro = ptg::intertwiner_action(bro, 0, 1, ptg::Branch::Plus);
    require("metric swaps branches above threshold", act_bro.matched == ptg::Branch::Minus);
    expect("metric image alignment (V=1.5, n2=1)", act_bro.parallel_residual, 1e-10);
  }

  // Completeness and its loss exactly at integer V^2.
  {
    const ptg::TruncationSpec trunc(0, 8);
    const auto ok = ptg::completeness_check(
        ptg::DiracModel(Cone::K, FieldSign::Positive, 0.3, 1.0), trunc);
    require("complete family at V=0.3", ok.complete);
    const auto bad = ptg::completeness_check(
        ptg::DiracModel(Cone::K, FieldSign::Positive, 1.0, 1.0), trunc);
    require("rank hole at V=1 sits in n2=1",
            bad.deficient_landau.has_value() && *bad.deficient_landau == 1);
    expect("witness overlap at V=1", bad.max_overlap, 1e-12);
  }

  // Discrete symmetry identities on an 8x8 interior.
  {
    const ptg::TruncationSpec trunc(8, 8);
    expect("time-reversal identity (V=0.7)", ptg::verify_T_identity(0.7, trunc, 1.0), 1e-12);
    expect("combined identity (V=0.7)", ptg::verify_PT_identity(0.7, trunc, 1.0), 1e-12);
    expect("time-reversal breaking offset (V=0.5)",
           std::abs(ptg::t_breaking_residual(0.5, trunc, 1.0) - 1.0), 1e-12);
    expect("parity breaking offset (V=0.5)",
           std::abs(ptg::p_breaking_residual(0.5, trunc, 1.0) - 1.0), 1e-12);
  }

  // Dense biorthogonal machinery on the dimer.
  {
    const auto sys = ptg::build_system(ptg::dimer_matrix(ptg::DimerParams(2.0, 1.0)));
    const double s3 = std::sqrt(3.0);
    expect("finite pair recovery (g=2, V=1)",
           std::max(std::abs(sys.eigenvalues(0) + Complex(s3, 0.0)),
                    std::abs(sys.eigenvalues(1) - Complex(s3, 0.0))),
           1e-12);
    const auto rep = ptg::verify_intertwining(sys);
    expect("finite intertwining (g=2, V=1)", std::max(rep.s_psi_residual, rep.s_phi_residual),
           1e-8);
  }

  // Lattice layer.
  {
    const ptg::BlochParams p;
    expect("structure factor at K", std::abs(ptg::structure_factor(p, ptg::dirac_K())), 1e-12);
    expect("structure factor at K'", std::abs(ptg::structure_factor(p, ptg::dirac_KPrime())),
           1e-12);
    const auto e = ptg::dimer_eigen(ptg::DimerParams(1.0, 1.0));
    require("dimer coalescence flag at g=V=1", e.exceptional);
    const auto pt = ptg::dimer_pt_check(ptg::DimerParams(1.0, 2.0));
    expect("dimer conjugate pairing (g=1, V=2)", pt.pairing_residual.value_or(1.0), 1e-12);
  }

  if (!o.out.empty()) {
    Table t;
    t.command = "selftest";
    t.config = config_echo(o);
    t.columns = {"name", "value", "bound"};
    for (const auto& l : lines) {
      t.cells.push_back({l[0], l[1], l[2]});
      json row;
      row["name"] = l[0];
      row["value"] = l[1];
      row["bound"] = l[2];
      t.rows.push_back(std::move(row));
    }
    write_table(o, t);
  }
  return check.finish();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectral toolkit for a gain/loss Landau-level model"};
  app.require_subcommand(1);

  CommonOpts o;
  BandOpts bands;
  DimerOpts dimer;
  int gram_n2 = -1;

  const auto add_common = [&](CLI::App* sub, bool with_grid) {
    sub->add_option("--cone", o.cone, "valley: K or Kprime")
        ->check(CLI::IsMember({"K", "Kprime", "K'"}));
    sub->add_option("--field-sign", o.field, "magnetic field orientation: + or -")
        ->check(CLI::IsMember({"+", "-", "plus", "minus"}));
    auto* v = sub->add_option("--V", o.V, "gain/loss strength");
    if (with_grid) {
      sub->add_option("--V-grid", o.v_grid, "sweep start:stop:step")->excludes(v);
    }
    sub->add_option("--n2-max", o.n2_max, "Landau-level truncation (default 64)");
    sub->add_option("--n1-max", o.n1_max, "degeneracy-mode truncation (default 0)");
    sub->add_option("--epsilon", o.epsilon, "energy scale prefactor");
    sub->add_option("--tol-ep", o.tol_ep, "coalescence detection tolerance");
    sub->add_option("--tol-zero", o.tol_zero, "zero-residual tolerance");
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", o.out, "output file (default <command>.<format> in $PTG_OUT_DIR)");
  };

  auto* spectrum = app.add_subcommand("spectrum", "level table over a V sweep");
  add_common(spectrum, true);
  auto* ep_scan = app.add_subcommand("ep-scan", "completeness over a V sweep");
  add_common(ep_scan, true);
  auto* gram = app.add_subcommand("gram", "biorthogonal pairing pattern per sector");
  add_common(gram, false);
  gram->add_option("--n2", gram_n2, "report a single sector instead of 1..n2-max");
  auto* completeness = app.add_subcommand("completeness", "eigenvector-family rank report");
  add_common(completeness, false);
  auto* symmetry = app.add_subcommand("symmetry", "discrete-symmetry identity residuals");
  add_common(symmetry, false);
  auto* bands_cmd = app.add_subcommand("bands", "tight-binding band surface export");
  add_common(bands_cmd, false);
  bands_cmd->add_option("--t1", bands.t1, "hopping amplitude");
  bands_cmd->add_option("--kx-min", bands.kx_min, "grid lower kx bound");
  bands_cmd->add_option("--kx-max", bands.kx_max, "grid upper kx bound");
  bands_cmd->add_option("--ky-min", bands.ky_min, "grid lower ky bound");
  bands_cmd->add_option("--ky-max", bands.ky_max, "grid upper ky bound");
  bands_cmd->add_option("--nx", bands.nx, "grid points along kx");
  bands_cmd->add_option("--ny", bands.ny, "grid points along ky");
  auto* dimer_cmd = app.add_subcommand("dimer", "two-site gain/loss cell report");
  add_common(dimer_cmd, false);
  dimer_cmd->add_option("--g", dimer.g, "dimer coupling");
  auto* selftest = app.add_subcommand("selftest", "run the built-in cross-check battery");
  add_common(selftest, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (spectrum->parsed()) return cmd_spectrum(o);
    if (ep_scan->parsed()) return cmd_ep_scan(o);
    if (gram->parsed()) return cmd_gram(o, gram_n2);
    if (completeness->parsed()) return cmd_completeness(o);
    if (symmetry->parsed()) return cmd_symmetry(o);
    if (bands_cmd->parsed()) return cmd_bands(o, bands);
    if (dimer_cmd->parsed()) return cmd_dimer(o, dimer);
    if (selftest->parsed()) return cmd_selftest(o);
  } catch (const UsageError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
