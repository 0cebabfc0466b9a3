#include "cli.hpp"

#include <CLI11.hpp>
#include <array>
#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "trispin/dynamics.hpp"
#include "trispin/errors.hpp"
#include "trispin/krawtchouk.hpp"
#include "trispin/model.hpp"
#include "trispin/selftest.hpp"
#include "trispin/table_io.hpp"

namespace trispin::cli {

namespace {

constexpr double kPstDeviationTolerance = 1e-8;
constexpr double kPstTotalTolerance = 1e-10;

/// Everything a subcommand may read; unset optionals mean the flag was absent.
struct RunConfig {
  int N = -1;
  std::vector<double> p;  // explicit mode: p1,p2,p3,p4
  std::optional<double> p1;  // transfer mode together with root
  std::string root;
  std::vector<int> from;
  std::vector<int> to;
  std::optional<double> T;
  std::string t_grid;
  std::string format = "csv";
  std::string out_path;
};

ModelParams explicit_params(const RunConfig& cfg) {
  if (!cfg.p.empty() && (cfg.p1 || !cfg.root.empty()))
    throw ValidationError("give either --p or --p1/--root, not both");
  if (cfg.p.empty()) {
    if (cfg.p1 || !cfg.root.empty()) {
      if (!cfg.p1 || cfg.root.empty()) throw ValidationError("--p1 and --root go together");
      const PstRoot root = cfg.root == "plus" ? PstRoot::plus : PstRoot::minus;
      return make_pst_params(*cfg.p1, root).model(cfg.N);
    }
    throw ValidationError("missing parameters: use --p p1,p2,p3,p4 or --p1 and --root");
  }
  return validate_params(cfg.N, cfg.p[0], cfg.p[1], cfg.p[2], cfg.p[3]);
}

PstParams transfer_params(const RunConfig& cfg) {
  if (!cfg.p.empty()) {
    if (cfg.p1 || !cfg.root.empty()) throw ValidationError("give either --p or --p1/--root, not both");
    const ModelParams m = validate_params(cfg.N, cfg.p[0], cfg.p[1], cfg.p[2], cfg.p[3]);
    if (m.p1 != m.p4 || m.p2 != m.p3) throw RestrictionError("transfer regime needs p1 == p4 and p2 == p3");
    return checked_pst_params(m.p1, m.p2);
  }
  if (!cfg.p1 || cfg.root.empty()) throw ValidationError("transfer regime needs --p1 and --root");
  return make_pst_params(*cfg.p1, cfg.root == "plus" ? PstRoot::plus : PstRoot::minus);
}

SiteIndex site_from(const std::vector<int>& v, const char* flag) {
  if (v.size() != 2) throw ValidationError(std::string(flag) + " expects i,j");
  return {v[0], v[1]};
}

// "start:stop:count" (inclusive, count >= 1) or a comma separated list
std::vector<double> parse_grid(const std::string& text) {
  std::vector<double> grid;
  auto number = [](const std::string& token) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != token.size() || !std::isfinite(v))
      throw ValidationError("bad time value '" + token + "'");
    return v;
  };
  if (const auto c1 = text.find(':'); c1 != std::string::npos) {
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw ValidationError("--t-grid range is start:stop:count");
    const double start = number(text.substr(0, c1));
    const double stop = number(text.substr(c1 + 1, c2 - c1 - 1));
    const double count = number(text.substr(c2 + 1));
    if (count < 1 || count != std::floor(count) || stop < start)
      throw ValidationError("--t-grid needs count >= 1 and stop >= start");
    const auto n = static_cast<int>(count);
    for (int k = 0; k < n; ++k) grid.push_back(n == 1 ? start : start + (stop - start) * k / (n - 1));
    return grid;
  }
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto next = text.find(',', pos);
    grid.push_back(number(text.substr(pos, next - pos)));
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return grid;
}

Column integer(std::string name) { return {std::move(name), ColumnKind::integer}; }
Column real(std::string name) { return {std::move(name), ColumnKind::real}; }

Table spectrum_table(const RunConfig& cfg) {
  const ModelParams params = explicit_params(cfg);
  Table table{{integer("s"), integer("t"), real("x")}, {}, {}};
  for (const auto& [s, t] : enumerate_sites(params.N))
    table.add_row({std::int64_t{s}, std::int64_t{t}, eigenvalue(s, t, params)});
  return table;
}

Table couplings_table(const RunConfig& cfg) {
  const ModelParams params = explicit_params(cfg);
  const CouplingSet c = couplings(params);
  Table table{{integer("i"), integer("j"), real("I"), real("J"), real("B")}, {}, {}};
  for (const auto& [i, j] : c.lattice().sites())
    table.add_row({std::int64_t{i}, std::int64_t{j}, c.I(i, j), c.J(i, j), c.B(i, j)});
  return table;
}

Table evolve_table(const RunConfig& cfg) {
  const ModelParams params = explicit_params(cfg);
  if (cfg.from.empty()) throw ValidationError("evolve needs --from i,j");
  const SiteIndex from = site_from(cfg.from, "--from");
  if (!in_triangle(from, params.N)) throw DomainError("--from site outside the triangle");
  if (!cfg.to.empty() && !in_triangle(site_from(cfg.to, "--to"), params.N))
    throw DomainError("--to site outside the triangle");
  if (cfg.T.has_value() == !cfg.t_grid.empty())
    throw ValidationError("evolve needs exactly one of --T or --t-grid");

  const EigenSystem eig = build_eigensystem(params);
  if (!cfg.t_grid.empty()) {
    if (cfg.to.empty()) throw ValidationError("--t-grid needs --to i,j");
    const std::vector<double> grid = parse_grid(cfg.t_grid);
    Table table{{real("t"), real("probability")}, {}, {}};
    for (const ScanPoint& point : fidelity_scan(eig, from, site_from(cfg.to, "--to"), grid))
      table.add_row({point.t, point.probability});
    return table;
  }

  const double T = *cfg.T;
  if (!std::isfinite(T)) throw ValidationError("--T must be finite");
  const AmplitudeTable amplitudes = amplitude_table(eig, from, T);
  Table table{{integer("from_i"), integer("from_j"), integer("to_i"), integer("to_j"), real("T"),
               real("re"), real("im"), real("probability")},
              {},
              {{"total_probability", amplitudes.total_probability()}}};
  for (const SiteIndex& to : eig.lattice.sites()) {
    if (!cfg.to.empty() && to != site_from(cfg.to, "--to")) continue;
    const Complex f = amplitudes.amplitude(to);
    table.add_row({std::int64_t{from.i}, std::int64_t{from.j}, std::int64_t{to.i}, std::int64_t{to.j},
                   T, f.real(), f.imag(), amplitudes.probability(to)});
  }
  return table;
}

Table pst_table(const RunConfig& cfg, bool& within_tolerance) {
  const PstParams pst = transfer_params(cfg);
  const PstDistribution d = pst_distribution(pst, cfg.N);
  Table table{{integer("i"), integer("j"), real("probability"), real("binomial"), real("deviation")},
              {},
              {{"N", static_cast<double>(cfg.N)},
               {"p1", pst.p1},
               {"p2", pst.p2},
               {"revival_time", pst.revival_time()},
               {"max_deviation", d.max_deviation},
               {"total", d.total},
               {"off_hypotenuse_max", d.off_hypotenuse_max}}};
  for (std::size_t k = 0; k < d.sites.size(); ++k)
    table.add_row({std::int64_t{d.sites[k].i}, std::int64_t{d.sites[k].j}, d.probability[k],
                   d.binomial[k], std::abs(d.probability[k] - d.binomial[k])});
  within_tolerance = d.max_deviation < kPstDeviationTolerance &&
                     std::abs(d.total - 1.0) < kPstTotalTolerance;
  return table;
}

Table lightcone_table(const RunConfig& cfg) {
  const PstParams pst = transfer_params(cfg);
  Table table{{integer("N"), real("revival_time"), real("max_violation")}, {}, {}};
  table.add_row({std::int64_t{cfg.N}, pst.revival_time(), light_cone_check(pst, cfg.N)});
  return table;
}

Table chain_table(const RunConfig& cfg) {
  Table table{{integer("N"), real("t"), real("fidelity")}, {}, {}};
  table.add_row({std::int64_t{cfg.N}, std::numbers::pi, chain_pst_fidelity(cfg.N)});
  return table;
}

Table selftest_table(bool& all_passed) {
  Table table{{{"check", ColumnKind::text}, integer("passed"), real("value"), real("tolerance")}, {}, {}};
  all_passed = true;
  for (const SelfTestResult& r : run_selftest()) {
    table.add_row({r.name, std::int64_t{r.passed ? 1 : 0}, r.value, r.tolerance});
    all_passed = all_passed && r.passed;
  }
  return table;
}

void add_output_flags(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  sub.add_option("--out", cfg.out_path, "Write the table to this file instead of stdout");
}

void add_order_flag(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--N", cfg.N, "Lattice order N")->required()->check(CLI::NonNegativeNumber);
}

void add_param_flags(CLI::App& sub, RunConfig& cfg) {
  sub.add_option("--p", cfg.p, "Explicit parameters p1,p2,p3,p4")->delimiter(',')->expected(4);
  sub.add_option("--p1", cfg.p1, "p1 for the transfer regime (p4 = p1, p2 = p3 from --root)");
  sub.add_option("--root", cfg.root, "Root of (p1+p2)^2 = 8 p1 p2: plus or minus")
      ->check(CLI::IsMember({"plus", "minus"}));
}

}  // namespace

int run(std::span<const char* const> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Single-excitation dynamics on a triangular XX spin lattice"};
  app.set_config("--config", "", "Optional TOML/INI config file; command-line flags take precedence");
  app.require_subcommand(1);
  RunConfig cfg;

  auto* spectrum = app.add_subcommand("spectrum", "Analytic one-excitation spectrum x(s,t)");
  auto* coupling = app.add_subcommand("couplings", "Couplings I, J and fields B per site");
  auto* evolve = app.add_subcommand("evolve", "Transition amplitudes at a time, or a probability scan");
  auto* pst = app.add_subcommand("pst", "Apex-to-hypotenuse distribution at the revival time");
  auto* lightcone = app.add_subcommand("lightcone", "Largest amplitude with i+j+k+l < N at the revival time");
  auto* chain = app.add_subcommand("chain1d", "Transfer fidelity of the reference chain at t = pi");
  auto* selftest = app.add_subcommand("selftest", "Run the invariant suite");

  for (auto* sub : {spectrum, coupling, evolve, pst, lightcone}) {
    add_order_flag(*sub, cfg);
    add_param_flags(*sub, cfg);
  }
  chain->add_option("--N", cfg.N, "Chain has N+1 sites")->required()->check(CLI::PositiveNumber);
  evolve->add_option("--from", cfg.from, "Initial site i,j")->delimiter(',')->expected(2);
  evolve->add_option("--to", cfg.to, "Target site i,j (all sites when omitted)")->delimiter(',')->expected(2);
  evolve->add_option("--T", cfg.T, "Evolution time");
  evolve->add_option("--t-grid", cfg.t_grid, "Times: start:stop:count or a comma separated list");
  for (auto* sub : {spectrum, coupling, evolve, pst, lightcone, chain, selftest}) add_output_flags(*sub, cfg);

  try {
    app.parse(static_cast<int>(args.size()), args.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    Table table;
    int code = kOk;
    if (spectrum->parsed()) {
      table = spectrum_table(cfg);
    } else if (coupling->parsed()) {
      table = couplings_table(cfg);
    } else if (evolve->parsed()) {
      table = evolve_table(cfg);
    } else if (pst->parsed()) {
      bool ok = false;
      table = pst_table(cfg, ok);
      if (!ok) code = kToleranceFailure;
    } else if (lightcone->parsed()) {
      table = lightcone_table(cfg);
    } else if (chain->parsed()) {
      table = chain_table(cfg);
    } else {
      bool ok = false;
      table = selftest_table(ok);
      if (!ok) code = kToleranceFailure;
    }

    const std::string text = serialize(table, cfg.format == "json" ? Format::json : Format::csv);
    if (cfg.out_path.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.out_path, std::ios::binary);
      if (!file) throw Error("cannot open '" + cfg.out_path + "' for writing");
      file << text;
    }
    if (code == kToleranceFailure) err << "error: result outside tolerance\n";
    return code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace trispin::cli
