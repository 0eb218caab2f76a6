// spinlab: spin-system laboratory command-line driver.
//
// Writes one JSON (or CSV) document to stdout, diagnostics to stderr.
// Exit codes: 0 success, 1 domain error (structured JSON on stdout),
// 2 usage error.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "spinlab/bethe.hpp"
#include "spinlab/cache.hpp"
#include "spinlab/chain.hpp"
#include "spinlab/eigensolver.hpp"
#include "spinlab/toric.hpp"
#include "spinlab/wave.hpp"

using namespace spinlab;
using json = spinlab::json;

namespace {

struct RunConfig {
  std::string format = "json";
  std::filesystem::path cache_dir;
  bool no_cache = false;
  std::uint64_t seed = 0x5eed5eedULL;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  double tol = 1e-10;
};

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("SPINLAB_CACHE_DIR")) return env;
  if (const char* home = std::getenv("HOME"))
    return std::filesystem::path(home) / ".cache" / "spinlab";
  return std::filesystem::temp_directory_path() / "spinlab-cache";
}

CacheConfig cache_config(const RunConfig& cfg) {
  return CacheConfig{cfg.cache_dir.empty() ? default_cache_dir() : cfg.cache_dir,
                     !cfg.no_cache};
}

// Emit the final document. For cached subcommands the rendered text is
// what gets stored, so hits are byte-identical by construction.
void emit(const std::string& rendered) { std::cout << rendered; }

std::string render_json(const json& doc) { return doc.dump(2) + "\n"; }

json spectrum_json(const SpectrumReport& r) {
  json doc;
  doc["eigenvalues"] = r.eigenvalues;
  doc["requested"] = r.requested;
  doc["residual_bound"] = r.residual_bound;
  doc["ground_degeneracy"] = r.ground_degeneracy;
  doc["gap"] = r.gap;
  doc["gapless_at_this_size"] = r.gapless_at_this_size;
  doc["dense"] = r.dense;
  return doc;
}

Boundary parse_boundary(const std::string& b) {
  if (b == "periodic") return Boundary::periodic;
  if (b == "open") return Boundary::open;
  throw Error("invalid_argument", "boundary must be 'periodic' or 'open'", b);
}

// ---------------------------------------------------------------- chain

struct ChainFlags {
  std::size_t n = 8;
  double j = 1.0, b = 0.0;
  std::string boundary = "periodic";
  std::string sector = "all";
  int k = -1;
};

Sector parse_sector(const std::string& s) {
  if (s == "all") return Sector{};
  return Sector{std::stoi(s)};
}

struct DispersionRow {
  std::size_t m;
  double k, e_analytic, e_numeric, residual;
};

std::vector<DispersionRow> dispersion_table(const ChainParams& p, const RunConfig& cfg) {
  const OperatorMatrix mat =
      assemble(build_hamiltonian(p), SectorBasis::fixed_magnons(p.n_sites, 1), cfg.threads);
  const SpectrumReport rep = spectrum(mat, -1, cfg.tol);
  // pair analytic and numeric levels in sorted order, then report by m
  std::vector<std::pair<double, std::size_t>> analytic;
  for (std::size_t m = 0; m < p.n_sites; ++m)
    analytic.emplace_back(magnon_energy(p, {m, p.n_sites}), m);
  std::sort(analytic.begin(), analytic.end());
  std::vector<DispersionRow> rows(p.n_sites);
  for (std::size_t i = 0; i < p.n_sites; ++i) {
    const auto [ea, m] = analytic[i];
    const double en = rep.eigenvalues[i];
    rows[m] = {m, MagnonMomentum{m, p.n_sites}.k(), ea, en, std::abs(en - ea)};
  }
  return rows;
}

std::string render_dispersion_csv(const std::vector<DispersionRow>& rows) {
  std::string out = "m,k,E_analytic,E_numeric,residual\n";
  for (const auto& r : rows)
    out += std::to_string(r.m) + "," + format_double(r.k) + "," + format_double(r.e_analytic) +
           "," + format_double(r.e_numeric) + "," + format_double(r.residual) + "\n";
  return out;
}

json render_dispersion_json(const ChainParams& p, const std::vector<DispersionRow>& rows) {
  json doc;
  doc["n"] = p.n_sites;
  doc["j"] = p.j;
  doc["b"] = p.b;
  json arr = json::array();
  for (const auto& r : rows) {
    json row;
    row["m"] = r.m;
    row["k"] = r.k;
    row["E_analytic"] = r.e_analytic;
    row["E_numeric"] = r.e_numeric;
    row["residual"] = r.residual;
    arr.push_back(std::move(row));
  }
  doc["rows"] = std::move(arr);
  return doc;
}

void run_chain_spectrum(const ChainFlags& f, const RunConfig& cfg) {
  const ChainParams p{f.n, f.j, f.b, parse_boundary(f.boundary)};
  const Sector sector = parse_sector(f.sector);

  const std::string params = "chain spectrum|n=" + std::to_string(f.n) +
                             "|j=" + format_double(f.j) + "|b=" + format_double(f.b) +
                             "|boundary=" + f.boundary + "|sector=" + f.sector +
                             "|k=" + std::to_string(f.k) + "|tol=" + format_double(cfg.tol) +
                             "|seed=" + std::to_string(cfg.seed) + "|format=" + cfg.format;
  const CacheConfig cc = cache_config(cfg);
  const std::string key = cache_key(params);
  if (const auto hit = cache_lookup(cc, key)) {
    std::cerr << "cache hit " << key << "\n";
    emit((*hit)["output"].get<std::string>());
    return;
  }

  std::string rendered;
  if (cfg.format == "csv" && !sector.is_all() && sector.magnons == 1) {
    rendered = render_dispersion_csv(dispersion_table(p, cfg));
  } else {
    SolverOptions opts;
    opts.seed = cfg.seed;
    const OperatorMatrix mat =
        assemble(build_hamiltonian(p), SectorBasis(p.n_sites, sector), cfg.threads);
    const SpectrumReport rep = spectrum(mat, f.k, cfg.tol, opts);
    if (cfg.format == "csv") {
      rendered = "index,eigenvalue\n";
      for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i)
        rendered += std::to_string(i) + "," + format_double(rep.eigenvalues[i]) + "\n";
    } else {
      json doc;
      doc["n"] = f.n;
      doc["j"] = f.j;
      doc["b"] = f.b;
      doc["boundary"] = f.boundary;
      doc["sector"] = sector.is_all() ? json("all") : json(sector.magnons);
      doc.update(spectrum_json(rep));
      rendered = render_json(doc);
    }
  }
  json entry;
  entry["params"] = params;
  entry["output"] = rendered;
  cache_store(cc, key, entry);
  emit(rendered);
}

void run_chain_dispersion(const ChainFlags& f, const RunConfig& cfg) {
  const ChainParams p{f.n, f.j, f.b, parse_boundary(f.boundary)};
  const auto rows = dispersion_table(p, cfg);
  if (cfg.format == "csv")
    emit(render_dispersion_csv(rows));
  else
    emit(render_json(render_dispersion_json(p, rows)));
}

struct BetheFlags {
  std::size_t n = 12;
  std::size_t magnons = 2;
  std::vector<int> quantum_numbers;
  bool sweep = false;
  bool compare_ed = false;
  double j = 1.0, b = 0.0;
  double tol = 1e-12;
  std::size_t max_iter = 200;
};

json root_set_json(const BetheRootSet& r, std::optional<double> matched) {
  json doc;
  doc["n"] = r.n_sites;
  doc["quantum_numbers"] = r.quantum_numbers;
  doc["momenta"] = r.momenta;
  doc["residuals"] = r.residuals;
  doc["energy"] = r.energy;
  doc["matched_ed_eigenvalue"] = matched ? json(*matched) : json(nullptr);
  doc["converged"] = r.converged();
  return doc;
}

void run_chain_bethe(const BetheFlags& f, const RunConfig& cfg) {
  BetheOptions opts;
  opts.j = f.j;
  opts.b = f.b;
  opts.tol = f.tol;
  opts.max_iter = f.max_iter;

  if (f.sweep) {
    const BetheSweepReport rep = bethe_sweep(f.n, f.magnons, opts);
    json doc;
    doc["n"] = f.n;
    doc["magnons"] = f.magnons;
    json entries = json::array();
    for (const auto& e : rep.entries) {
      json entry = root_set_json(e.roots, e.matched_ed);
      entry["state_residual"] = e.state_residual;
      entries.push_back(std::move(entry));
    }
    doc["roots"] = std::move(entries);
    doc["coverage"] = rep.coverage;
    doc["unmatched_levels"] = rep.unmatched_levels;
    if (f.compare_ed) doc["sector_spectrum"] = rep.sector_spectrum;
    emit(render_json(doc));
    return;
  }

  std::vector<int> qn = f.quantum_numbers;
  if (qn.empty()) throw Error("invalid_argument", "provide --q quantum numbers or --sweep");
  const BetheRootSet roots = solve_bethe(f.n, qn, opts);
  std::optional<double> matched;
  if (f.compare_ed && roots.converged()) {
    const ChainParams p{f.n, f.j, f.b, Boundary::periodic};
    const SpectrumReport rep = spectrum(
        assemble(build_hamiltonian(p),
                 SectorBasis::fixed_magnons(f.n, static_cast<int>(qn.size())), cfg.threads),
        -1, cfg.tol);
    double best = 1e300;
    for (const double e : rep.eigenvalues)
      if (std::abs(e - roots.energy) < std::abs(best - roots.energy)) best = e;
    if (std::abs(best - roots.energy) <= 1e-7) matched = best;
  }
  emit(render_json(root_set_json(roots, matched)));
}

void run_chain_yangian(std::size_t n, const RunConfig&) {
  const YangianGenerators y = yangian_quadratic(n);
  json doc;
  doc["n"] = n;
  for (const Boundary bc : {Boundary::periodic, Boundary::open}) {
    const ChainParams p{n, 1.0, 0.0, bc};
    const Eigen::MatrixXcd dh = to_dense_full(build_hamiltonian(p));
    json norms;
    for (const auto& [name, gen] :
         {std::pair<const char*, const PauliSum&>{"s2z", y.s2z}, {"s2plus", y.s2plus},
          {"s2minus", y.s2minus}}) {
      const Eigen::MatrixXcd dg = to_dense_full(gen);
      norms[name] = (dh * dg - dg * dh).norm();
    }
    doc[bc == Boundary::periodic ? "periodic" : "open"] = std::move(norms);
  }
  doc["note"] = "Frobenius norms of [H, S2]; no pass/fail threshold is attached";
  emit(render_json(doc));
}

// ---------------------------------------------------------------- toric

json certificate_json(const DegeneracyCertificate& c) {
  json doc;
  doc["method"] = c.method;
  doc["n"] = c.n_vertices;
  doc["rank"] = c.rank;
  doc["degeneracy"] = c.degeneracy;
  return doc;
}

void run_toric_spectrum(std::size_t lx, std::size_t ly, int k, const RunConfig& cfg) {
  const ToricLattice l(lx, ly);
  if (l.n_vertices() > 24)
    throw Error("invalid_argument",
                "toric ED limited to 24 vertices; use 'toric degeneracy --method gf2'",
                std::to_string(l.n_vertices()) + " vertices");
  const std::string params = "toric spectrum|lx=" + std::to_string(lx) +
                             "|ly=" + std::to_string(ly) + "|k=" + std::to_string(k) +
                             "|tol=" + format_double(cfg.tol) +
                             "|seed=" + std::to_string(cfg.seed) + "|format=" + cfg.format;
  const CacheConfig cc = cache_config(cfg);
  const std::string key = cache_key(params);
  if (const auto hit = cache_lookup(cc, key)) {
    std::cerr << "cache hit " << key << "\n";
    emit((*hit)["output"].get<std::string>());
    return;
  }
  SolverOptions opts;
  opts.seed = cfg.seed;
  const OperatorMatrix m =
      assemble(build_toric_hamiltonian(l), SectorBasis::full(l.n_vertices()), cfg.threads);
  const SpectrumReport rep = spectrum(m, k, cfg.tol, opts);
  std::string rendered;
  if (cfg.format == "csv") {
    rendered = "index,eigenvalue\n";
    for (std::size_t i = 0; i < rep.eigenvalues.size(); ++i)
      rendered += std::to_string(i) + "," + format_double(rep.eigenvalues[i]) + "\n";
  } else {
    json doc;
    doc["lx"] = lx;
    doc["ly"] = ly;
    doc.update(spectrum_json(rep));
    rendered = render_json(doc);
  }
  json entry;
  entry["params"] = params;
  entry["output"] = rendered;
  cache_store(cc, key, entry);
  emit(rendered);
}

void run_toric_degeneracy(std::size_t lx, std::size_t ly, const std::string& method,
                          const RunConfig& cfg) {
  const ToricLattice l(lx, ly);
  DegeneracyCertificate cert;
  if (method == "gf2") {
    cert = stabilizer_degeneracy(l);
  } else if (method == "ed") {
    if (l.n_vertices() > 24)
      throw Error("invalid_argument", "ED degeneracy limited to 24 vertices",
                  std::to_string(l.n_vertices()) + " vertices");
    const SpectrumReport rep = spectrum(
        assemble(build_toric_hamiltonian(l), SectorBasis::full(l.n_vertices()), cfg.threads),
        -1, cfg.tol);
    cert.method = "ed";
    cert.n_vertices = l.n_vertices();
    cert.rank = 0;
    cert.degeneracy = static_cast<std::size_t>(rep.ground_degeneracy);
  } else {
    throw Error("invalid_argument", "method must be 'gf2' or 'ed'", method);
  }
  json doc = certificate_json(cert);
  doc["lx"] = lx;
  doc["ly"] = ly;
  emit(render_json(doc));
}

BishopPath path_from_json(const json& p) {
  BishopPath out;
  const std::string color = p.at("color").get<std::string>();
  if (color == "white")
    out.color = FaceColor::white;
  else if (color == "black")
    out.color = FaceColor::black;
  else
    throw Error("parse_error", "path color must be 'white' or 'black'", color);
  for (const auto& f : p.at("faces"))
    out.faces.push_back(Face{f.at(0).get<std::int64_t>(), f.at(1).get<std::int64_t>()});
  out.closed = p.value("closed", false);
  return out;
}

json load_paths_doc(const std::string& inline_json, const std::string& file) {
  try {
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw Error("parse_error", "cannot open paths file", file);
      return json::parse(in);
    }
    if (!inline_json.empty()) return json::parse(inline_json);
  } catch (const json::parse_error& e) {
    throw Error("parse_error", std::string("invalid paths JSON: ") + e.what());
  }
  throw Error("invalid_argument", "provide --paths <json> or --paths-file <path>");
}

void run_toric_braid(const std::string& paths_json, const std::string& paths_file,
                     const RunConfig&) {
  const json doc = load_paths_doc(paths_json, paths_file);
  const ToricLattice l(doc.at("lx").get<std::size_t>(), doc.at("ly").get<std::size_t>());
  const auto& paths = doc.at("paths");
  if (paths.size() != 2)
    throw Error("invalid_argument", "braid needs exactly two paths (one black, one white)");
  BishopPath a = path_from_json(paths[0]), b = path_from_json(paths[1]);
  if (a.color == FaceColor::white) std::swap(a, b);  // W (black) first
  const int phase = braiding_phase(l, a, b);
  json out;
  out["lx"] = l.lx();
  out["ly"] = l.ly();
  out["phase"] = phase;
  out["shared_sites"] = [&] {
    const auto ws = path_sites(l, a);
    const auto bs = path_sites(l, b);
    std::size_t shared = 0;
    for (const std::size_t s : ws) shared += std::count(bs.begin(), bs.end(), s);
    return shared;
  }();
  emit(render_json(out));
}

void run_toric_lines(const std::string& paths_json, const std::string& paths_file,
                     const RunConfig&) {
  const json doc = load_paths_doc(paths_json, paths_file);
  const ToricLattice l(doc.at("lx").get<std::size_t>(), doc.at("ly").get<std::size_t>());
  json out;
  out["lx"] = l.lx();
  out["ly"] = l.ly();
  json lines = json::array();
  for (const auto& pj : doc.at("paths")) {
    const BishopPath p = path_from_json(pj);
    const PauliString op = line_operator(l, p);
    json line;
    line["color"] = p.color == FaceColor::white ? "white" : "black";
    line["closed"] = p.closed;
    line["sites"] = path_sites(l, p);
    line["operator"] = op.str();
    const PauliString ops[] = {op};
    line["excitation_energy"] = excitation_energy(l, ops);
    lines.push_back(std::move(line));
  }
  out["lines"] = std::move(lines);
  emit(render_json(out));
}

// ----------------------------------------------------------------- wave

void run_wave_dispersion(std::size_t n, double a, double dt, double periods,
                         const RunConfig& cfg) {
  const LatticeWaveParams p{a, n};
  std::string csv = "k,omega_analytic,omega_measured,rel_error\n";
  json rows = json::array();
  for (const double k : allowed_momenta(n, a)) {
    const double wa = discrete_dispersion(k, a);
    double wm = 0, rel = 0;
    if (wa > 1e-12) {
      const double t_final = periods * 2 * std::numbers::pi / wa;
      wm = integrate_lattice_wave(p, k, t_final, dt).measured_omega;
      rel = std::abs(wm - wa) / wa;
    }
    csv += format_double(k) + "," + format_double(wa) + "," + format_double(wm) + "," +
           format_double(rel) + "\n";
    json row;
    row["k"] = k;
    row["omega_analytic"] = wa;
    row["omega_measured"] = wm;
    row["rel_error"] = rel;
    rows.push_back(std::move(row));
  }
  if (cfg.format == "csv") {
    emit(csv);
  } else {
    json doc;
    doc["n"] = n;
    doc["a"] = a;
    doc["dt"] = dt;
    doc["rows"] = std::move(rows);
    emit(render_json(doc));
  }
}

void run_wave_integrate(std::size_t n, double a, double k, double t_final, double dt,
                        const RunConfig&) {
  const LatticeWaveParams p{a, n};
  const WaveRun run = integrate_lattice_wave(p, k, t_final, dt);
  const double wa = discrete_dispersion(k, a);
  json doc;
  doc["n"] = n;
  doc["a"] = a;
  doc["k"] = k;
  doc["dt"] = dt;
  doc["steps"] = run.steps;
  doc["omega_analytic"] = wa;
  doc["omega_measured"] = run.measured_omega;
  doc["rel_error"] = wa > 1e-12 ? std::abs(run.measured_omega - wa) / wa : 0.0;
  doc["energy_drift"] = run.energy_drift;
  emit(render_json(doc));
}

void run_landau(double tau, double tau_c, double lambda, const RunConfig&) {
  const LandauParams p{tau, tau_c, lambda};
  const double phi = landau_equilibrium(p);
  const double r = tau - tau_c;
  json doc;
  doc["tau"] = tau;
  doc["tau_c"] = tau_c;
  doc["lambda"] = lambda;
  doc["phi0"] = phi;
  doc["free_energy"] = r * phi * phi + 0.5 * lambda * phi * phi * phi * phi;
  doc["closed_form"] = tau < tau_c ? std::sqrt((tau_c - tau) / lambda) : 0.0;
  emit(render_json(doc));
}

void run_stack(const std::vector<double>& a, const std::vector<double>& b,
               const RunConfig& cfg) {
  if (a.empty() || b.empty())
    throw Error("invalid_argument", "provide --a and --b eigenvalue lists");
  const std::vector<double> s = stack_spectra(a, b);
  if (cfg.format == "csv") {
    std::string csv = "index,eigenvalue\n";
    for (std::size_t i = 0; i < s.size(); ++i)
      csv += std::to_string(i) + "," + format_double(s[i]) + "\n";
    emit(csv);
  } else {
    json doc;
    doc["count"] = s.size();
    doc["eigenvalues"] = s;
    emit(render_json(doc));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spinlab: exact spin-chain and toric-code laboratory"};
  app.require_subcommand(1);

  RunConfig cfg;
  app.add_option("--format", cfg.format, "output format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--cache-dir", cfg.cache_dir,
                 "cache directory (default: $SPINLAB_CACHE_DIR or ~/.cache/spinlab)");
  app.add_flag("--no-cache", cfg.no_cache, "bypass cache lookup and store");
  app.add_option("--seed", cfg.seed, "iterative-solver start-vector seed");
  app.add_option("--threads", cfg.threads, "worker threads for matrix assembly");
  app.add_option("--tol", cfg.tol, "eigensolver tolerance");

  // chain
  CLI::App* chain = app.add_subcommand("chain", "Heisenberg XXX chain");
  chain->require_subcommand(1);
  ChainFlags cf;
  CLI::App* chain_spectrum = chain->add_subcommand("spectrum", "sector or full ED spectrum");
  chain_spectrum->add_option("--n", cf.n, "number of sites");
  chain_spectrum->add_option("--j", cf.j, "exchange coupling J");
  chain_spectrum->add_option("--b", cf.b, "external field B");
  chain_spectrum->add_option("--boundary", cf.boundary, "periodic or open");
  chain_spectrum->add_option("--sector", cf.sector, "magnon count or 'all'");
  chain_spectrum->add_option("--k", cf.k, "lowest-k eigenvalues, -1 for all");

  CLI::App* chain_disp = chain->add_subcommand("dispersion", "one-magnon dispersion table");
  chain_disp->add_option("--n", cf.n, "number of sites");
  chain_disp->add_option("--j", cf.j, "exchange coupling J");
  chain_disp->add_option("--b", cf.b, "external field B");
  chain_disp->add_option("--boundary", cf.boundary, "periodic or open");

  BetheFlags bf;
  CLI::App* chain_bethe = chain->add_subcommand("bethe", "Bethe-ansatz root solver");
  chain_bethe->add_option("--n", bf.n, "number of sites");
  chain_bethe->add_option("--magnons", bf.magnons, "magnon number for --sweep");
  chain_bethe->add_option("--q", bf.quantum_numbers, "quantum numbers for a single solve");
  chain_bethe->add_flag("--sweep", bf.sweep, "sweep all quantum-number multisets");
  chain_bethe->add_flag("--compare-ed", bf.compare_ed, "cross-validate against sector ED");
  chain_bethe->add_option("--j", bf.j, "exchange coupling J");
  chain_bethe->add_option("--b", bf.b, "external field B");
  chain_bethe->add_option("--bethe-tol", bf.tol, "Newton tolerance");
  chain_bethe->add_option("--max-iter", bf.max_iter, "Newton iteration cap");

  std::size_t yangian_n = 6;
  CLI::App* chain_yang = chain->add_subcommand("yangian", "nonlocal-charge commutator norms");
  chain_yang->add_option("--n", yangian_n, "number of sites (dense; keep small)");

  // toric
  CLI::App* toric = app.add_subcommand("toric", "toric code on the vertex torus");
  toric->require_subcommand(1);
  std::size_t lx = 4, ly = 4;
  int toric_k = -1;
  std::string method = "gf2";
  std::string paths_json, paths_file;
  CLI::App* toric_spectrum = toric->add_subcommand("spectrum", "full or lowest-k ED spectrum");
  toric_spectrum->add_option("--lx", lx, "lattice width (even)");
  toric_spectrum->add_option("--ly", ly, "lattice height (even)");
  toric_spectrum->add_option("--k", toric_k, "lowest-k eigenvalues, -1 for all");
  CLI::App* toric_deg = toric->add_subcommand("degeneracy", "ground-degeneracy certificate");
  toric_deg->add_option("--lx", lx, "lattice width (even)");
  toric_deg->add_option("--ly", ly, "lattice height (even)");
  toric_deg->add_option("--method", method, "gf2 or ed");
  CLI::App* toric_braid = toric->add_subcommand("braid", "braiding phase of two strings");
  toric_braid->add_option("--paths", paths_json, "inline lattice/paths JSON");
  toric_braid->add_option("--paths-file", paths_file, "path to lattice/paths JSON");
  CLI::App* toric_lines = toric->add_subcommand("lines", "line operators along bishop paths");
  toric_lines->add_option("--paths", paths_json, "inline lattice/paths JSON");
  toric_lines->add_option("--paths-file", paths_file, "path to lattice/paths JSON");

  // wave
  CLI::App* wave = app.add_subcommand("wave", "discretized scalar wave equation");
  wave->require_subcommand(1);
  std::size_t wn = 16;
  double wa = 1.0, wdt = 0.02, wperiods = 10.0, wk = 0.0, wt_final = 50.0;
  CLI::App* wave_disp = wave->add_subcommand("dispersion", "measured vs analytic dispersion");
  wave_disp->add_option("--n", wn, "ring size");
  wave_disp->add_option("--a", wa, "lattice spacing");
  wave_disp->add_option("--dt", wdt, "integrator timestep");
  wave_disp->add_option("--periods", wperiods, "integration length in periods");
  CLI::App* wave_int = wave->add_subcommand("integrate", "single-mode leapfrog run");
  wave_int->add_option("--n", wn, "ring size");
  wave_int->add_option("--a", wa, "lattice spacing");
  wave_int->add_option("--k", wk, "plane-wave momentum");
  wave_int->add_option("--t-final", wt_final, "integration time");
  wave_int->add_option("--dt", wdt, "integrator timestep");

  // landau
  CLI::App* landau = app.add_subcommand("landau", "Landau free-energy minimization");
  landau->require_subcommand(1);
  double tau = 0.0, tau_c = 1.0, lambda = 1.0;
  CLI::App* landau_min = landau->add_subcommand("minimize", "equilibrium order parameter");
  landau_min->add_option("--tau", tau, "control parameter");
  landau_min->add_option("--tau-c", tau_c, "critical value");
  landau_min->add_option("--lambda", lambda, "quartic coefficient (> 0)");

  // stack
  CLI::App* stack = app.add_subcommand("stack", "non-interacting spectrum composition");
  stack->require_subcommand(1);
  std::vector<double> sa, sb;
  CLI::App* stack_spec = stack->add_subcommand("spectra", "pairwise-sum spectrum");
  stack_spec->add_option("--a", sa, "first eigenvalue list");
  stack_spec->add_option("--b", sb, "second eigenvalue list");

  // allow the global flags to appear after any subcommand
  for (CLI::App* group : app.get_subcommands(nullptr)) {
    group->fallthrough();
    for (CLI::App* sub : group->get_subcommands(nullptr)) sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);  // prints help or the usage message
    return rc == 0 ? 0 : 2;
  }

  try {
    if (chain_spectrum->parsed()) run_chain_spectrum(cf, cfg);
    if (chain_disp->parsed()) run_chain_dispersion(cf, cfg);
    if (chain_bethe->parsed()) run_chain_bethe(bf, cfg);
    if (chain_yang->parsed()) run_chain_yangian(yangian_n, cfg);
    if (toric_spectrum->parsed()) run_toric_spectrum(lx, ly, toric_k, cfg);
    if (toric_deg->parsed()) run_toric_degeneracy(lx, ly, method, cfg);
    if (toric_braid->parsed()) run_toric_braid(paths_json, paths_file, cfg);
    if (toric_lines->parsed()) run_toric_lines(paths_json, paths_file, cfg);
    if (wave_disp->parsed()) run_wave_dispersion(wn, wa, wdt, wperiods, cfg);
    if (wave_int->parsed()) run_wave_integrate(wn, wa, wk, wt_final, wdt, cfg);
    if (landau_min->parsed()) run_landau(tau, tau_c, lambda, cfg);
    if (stack_spec->parsed()) run_stack(sa, sb, cfg);
  } catch (const Error& e) {
    json err;
    err["error_kind"] = e.kind();
    err["message"] = e.what();
    err["context"] = e.context();
    std::cout << err.dump(2) << "\n";
    return 1;
  } catch (const std::exception& e) {
    json err;
    err["error_kind"] = "internal_error";
    err["message"] = e.what();
    err["context"] = "";
    std::cout << err.dump(2) << "\n";
    return 1;
  }
  return 0;
}
