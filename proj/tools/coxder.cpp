// coxder: construct, verify and sweep free bases of Coxeter multiarrangements.
//
// Exit codes: 0 success, 2 usage or parse error, 3 construction failure,
// 4 verification failure.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <numeric>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "coxder/serialize.hpp"
#include "coxder/verify.hpp"

using namespace coxder;
using nlohmann::json;

namespace {

constexpr int kUsage = 2, kConstruction = 3, kVerification = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int env_int(const char* name, int fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  try {
    return std::stoi(v);
  } catch (const std::exception&) {
    throw UsageError(std::string("bad value for ") + name);
  }
}

struct Range {
  int lo = 0, hi = 0;
};

Range parse_range(const std::string& s) {
  Range r;
  auto colon = s.find(':');
  try {
    if (colon == std::string::npos) {
      r.lo = r.hi = std::stoi(s);
    } else {
      r.lo = std::stoi(s.substr(0, colon));
      r.hi = std::stoi(s.substr(colon + 1));
    }
  } catch (const std::exception&) {
    throw UsageError("bad range '" + s + "', expected LO:HI");
  }
  if (r.lo > r.hi) throw UsageError("empty range '" + s + "'");
  return r;
}

struct RunConfig {
  std::string family;
  int rank = 0, n = 0;
  std::optional<int> p, q, m1, m2;
  int case_tag = 0;
  std::string output, format = "text", input;
  std::string m1_range, m2_range, p_range, q_range, cases = "1,2,3,4";
  bool timing = false;
  int pole_cap = -1;

  Family fam() const {
    try {
      return parse_family(family);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  int param() const {
    switch (fam()) {
      case Family::B:
        if (rank < 2) throw UsageError("--family B needs --rank >= 2");
        return rank;
      case Family::I2:
        if (n < 4) throw UsageError("--family I2 needs --n >= 4");
        return n;
      default: return 0;
    }
  }
  ArrangementData arrangement() const {
    const int prm = param();
    try {
      return build_arrangement(fam(), prm);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  EngineOptions options() const {
    EngineOptions o;
    o.pole_cap = pole_cap >= 0 ? pole_cap : env_int("COXDER_POLE_CAP", o.pole_cap);
    return o;
  }
};

std::string params_of(const ArrangementData& arr) {
  switch (arr.family) {
    case Family::B: return "rank=" + std::to_string(arr.rank);
    case Family::I2: return "n=" + std::to_string(arr.n);
    default: return "-";
  }
}

std::string join(const std::vector<int>& v, const char* sep) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.output.empty() || cfg.output == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.output);
  if (!f) throw UsageError("cannot write " + cfg.output);
  f << text;
}

// ---- info ----

int cmd_info(const RunConfig& cfg) {
  const auto arr = cfg.arrangement();
  EpqContext ctx(arr, cfg.options());
  int n1 = 0, n2 = 0;
  for (const auto& hp : arr.hyperplanes) (hp.orbit == 1 ? n1 : n2)++;
  const auto& w = ctx.system(GroupTag::W);
  const auto& w1 = ctx.system(GroupTag::W1);
  const auto& w2 = ctx.system(GroupTag::W2);
  if (cfg.format == "json") {
    json j = {{"family", family_name(arr.family)},
              {"name", arr.name()},
              {"rank", arr.rank},
              {"hyperplanes", arr.hyperplanes.size()},
              {"orbits", {n1, n2}},
              {"degrees", w.degrees},
              {"degrees1", w1.degrees},
              {"degrees2", w2.degrees},
              {"h", ctx.h()},
              {"h1", ctx.h1()},
              {"h2", ctx.h2()},
              {"field", arr.field ? arr.field->name() : "Q"}};
    emit(cfg, j.dump(2) + "\n");
    return 0;
  }
  std::ostringstream o;
  o << arr.name() << "\n"
    << "hyperplanes: " << arr.hyperplanes.size() << " (orbits " << n1 << " + " << n2 << ")\n"
    << "degrees: (" << join(w.degrees, ",") << ")  h = " << ctx.h() << "\n"
    << "degrees W1: (" << join(w1.degrees, ",") << ")  h1 = " << ctx.h1() << "\n"
    << "degrees W2: (" << join(w2.degrees, ",") << ")  h2 = " << ctx.h2() << "\n"
    << "field: " << (arr.field ? arr.field->name() : "Q") << "\n";
  emit(cfg, o.str());
  return 0;
}

// ---- basis ----

// One cell of work: either (p, q, case) on the E^(p,q) route or an
// equivariant multiplicity on the rank-2 route.
BasisCertificate build_cell(const EpqContext* ctx, const ArrangementData& arr, int m1, int m2) {
  if (ctx) {
    auto c = case_for(m1, m2);
    return theta_basis(*ctx, c.p, c.q, c.case_tag);
  }
  return rank2_basis(arr, Multiplicity::from_orbits(arr, m1, m2));
}

std::string render_certificate(const BasisCertificate& c) {
  std::ostringstream o;
  auto arr = build_arrangement(c.family, c.param);
  o << arr.name() << "  m = (" << c.m1 << ", " << c.m2 << ")";
  if (c.case_tag) o << "  p = " << c.p << "  q = " << c.q << "  case " << c.case_tag;
  o << "  route " << c.route << "\n"
    << "exponents: (" << join(c.exponents, ",") << ")\n"
    << "saito c: " << c.saito_c.to_string() << "\n";
  for (size_t i = 0; i < c.basis.size(); ++i) {
    o << "theta" << i + 1 << " [deg " << c.exponents[i];
    if (i < c.invariance.size()) o << ", flags " << join(c.invariance[i], " ");
    o << "] = " << c.basis[i].to_string() << "\n";
  }
  return o.str();
}

int cmd_basis(const RunConfig& cfg) {
  const auto arr = cfg.arrangement();
  const bool rank2 = arr.family == Family::G2 || arr.family == Family::I2;
  const bool by_pq = cfg.p || cfg.q;
  const bool by_m = cfg.m1 || cfg.m2;
  if (by_pq == by_m) throw UsageError("give either --p/--q/--case or --m1/--m2");
  if (by_pq && (!cfg.p || !cfg.q)) throw UsageError("--p and --q go together");
  if (by_m && (!cfg.m1 || !cfg.m2)) throw UsageError("--m1 and --m2 go together");
  if (by_pq && rank2) throw UsageError("rank-2 families take --m1/--m2");
  if (by_pq && (cfg.case_tag < 1 || cfg.case_tag > 4)) throw UsageError("--case must be 1..4");
  if (by_m && cfg.case_tag) throw UsageError("--case is implied by --m1/--m2");
  if (cfg.format != "json" && cfg.format != "text") throw UsageError("--format must be json or text");

  BasisCertificate cert;
  if (rank2) {
    cert = rank2_basis(arr, Multiplicity::from_orbits(arr, *cfg.m1, *cfg.m2));
  } else {
    EpqContext ctx(arr, cfg.options());
    if (by_pq) {
      cert = theta_basis(ctx, *cfg.p, *cfg.q, cfg.case_tag);
    } else {
      cert = build_cell(&ctx, arr, *cfg.m1, *cfg.m2);
    }
  }
  // The certificate is checked again from scratch before it is written.
  auto report = check_certificate(cert);
  emit(cfg, cfg.format == "json" ? to_json(cert).dump(1) + "\n" : render_certificate(cert));
  if (!report.ok) {
    for (const auto& f : report.failures) std::cerr << "verification: " << f << "\n";
    return kVerification;
  }
  return 0;
}

// ---- verify ----

int cmd_verify(const RunConfig& cfg) {
  json j;
  {
    std::ifstream f(cfg.input);
    if (!f) throw UsageError("cannot read " + cfg.input);
    try {
      j = json::parse(f);
    } catch (const json::exception& e) {
      throw UsageError(std::string("parse error: ") + e.what());
    }
  }
  BasisCertificate cert;
  try {
    cert = certificate_from_json(j);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  auto report = check_certificate(cert);
  if (cfg.format == "json") {
    json r = {{"ok", report.ok}, {"failures", report.failures}, {"saito_c", to_json(report.saito_c)}};
    emit(cfg, r.dump(2) + "\n");
  } else {
    std::ostringstream o;
    o << (report.ok ? "OK" : "FAILED") << "  saito c = " << report.saito_c.to_string() << "\n";
    for (const auto& f : report.failures) o << "  " << f << "\n";
    emit(cfg, o.str());
  }
  return report.ok ? 0 : kVerification;
}

// ---- sweep ----

struct Cell {
  int m1 = 0, m2 = 0;
  int case_tag = 0;  // for the (p,q) window
  int p = 0, q = 0;
};

struct CellResult {
  bool ok = false;
  int code = 0;
  BasisCertificate cert;
  std::string error;
  double ms = 0;
};

std::vector<int> parse_cases(const std::string& s) {
  std::vector<int> r;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int c = 0;
    try {
      c = std::stoi(tok);
    } catch (const std::exception&) {
      throw UsageError("bad --cases");
    }
    if (c < 1 || c > 4) throw UsageError("cases must be 1..4");
    r.push_back(c);
  }
  std::sort(r.begin(), r.end());
  r.erase(std::unique(r.begin(), r.end()), r.end());
  if (r.empty()) throw UsageError("bad --cases");
  return r;
}

int cmd_sweep(const RunConfig& cfg) {
  const auto arr = cfg.arrangement();
  const bool rank2 = arr.family == Family::G2 || arr.family == Family::I2;
  const bool by_m = !cfg.m1_range.empty() || !cfg.m2_range.empty();
  const bool by_pq = !cfg.p_range.empty() || !cfg.q_range.empty();
  if (by_m == by_pq) throw UsageError("give either --m1/--m2 ranges or --p/--q ranges");
  if (by_pq && rank2) throw UsageError("rank-2 families sweep over --m1/--m2");
  if (cfg.format != "csv" && cfg.format != "json" && cfg.format != "text")
    throw UsageError("--format must be csv or json");

  std::vector<Cell> cells;
  if (by_m) {
    if (cfg.m1_range.empty() || cfg.m2_range.empty()) throw UsageError("--m1 and --m2 ranges go together");
    auto r1 = parse_range(cfg.m1_range), r2 = parse_range(cfg.m2_range);
    for (int a = r1.lo; a <= r1.hi; ++a)
      for (int b = r2.lo; b <= r2.hi; ++b) {
        Cell c{a, b};
        if (!rank2) {
          auto s = case_for(a, b);
          c.p = s.p, c.q = s.q, c.case_tag = s.case_tag;
        }
        cells.push_back(c);
      }
  } else {
    if (cfg.p_range.empty() || cfg.q_range.empty()) throw UsageError("--p and --q ranges go together");
    auto rp = parse_range(cfg.p_range), rq = parse_range(cfg.q_range);
    auto cs = parse_cases(cfg.cases);
    for (int p = rp.lo; p <= rp.hi; ++p)
      for (int q = rq.lo; q <= rq.hi; ++q)
        for (int c : cs) {
          auto [a, b] = multiplicity_for(p, q, c);
          cells.push_back({a, b, c, p, q});
        }
  }

  std::unique_ptr<EpqContext> ctx;
  if (!rank2) ctx = std::make_unique<EpqContext>(arr, cfg.options());
  std::vector<CellResult> results(cells.size());
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t i; (i = next++) < cells.size();) {
      const auto& c = cells[i];
      auto& r = results[i];
      auto t0 = std::chrono::steady_clock::now();
      try {
        r.cert = ctx ? theta_basis(*ctx, c.p, c.q, c.case_tag)
                     : rank2_basis(arr, Multiplicity::from_orbits(arr, c.m1, c.m2));
        auto rep = check_certificate(r.cert);
        r.ok = rep.ok && std::accumulate(r.cert.exponents.begin(), r.cert.exponents.end(), 0) == r.cert.m.total();
        if (!r.ok) {
          r.code = kVerification;
          r.error = rep.failures.empty() ? "exponent sum" : rep.failures.front();
        }
      } catch (const VerificationError& e) {
        r.code = kVerification, r.error = e.what();
      } catch (const std::exception& e) {
        r.code = kConstruction, r.error = e.what();
      }
      r.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  int workers = env_int("COXDER_WORKERS", static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
  workers = std::clamp(workers, 1, static_cast<int>(std::max<size_t>(1, cells.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();

  int code = 0;
  for (const auto& r : results) code = std::max(code, r.ok ? 0 : r.code);
  auto runtime = [&](const CellResult& r) {
    if (!cfg.timing) return std::string("-");
    std::ostringstream o;
    o << static_cast<long>(r.ms + 0.5);
    return o.str();
  };

  std::ostringstream o;
  if (cfg.format == "json") {
    json rows = json::array();
    for (size_t i = 0; i < cells.size(); ++i) {
      const auto& c = cells[i];
      const auto& r = results[i];
      json row = {{"family", family_name(arr.family)}, {"params", params_of(arr)}, {"m1", c.m1}, {"m2", c.m2},
                  {"case", c.case_tag}, {"ok", r.ok}};
      if (c.case_tag) row["p"] = c.p, row["q"] = c.q;
      if (r.ok) {
        row["exponents"] = r.cert.exponents;
        row["saito_c"] = to_json(r.cert.saito_c);
      } else {
        row["error"] = r.error;
      }
      if (cfg.timing) row["runtime_ms"] = static_cast<long>(r.ms + 0.5);
      rows.push_back(row);
    }
    o << json{{"schema", kSchemaVersion}, {"cells", rows}}.dump(1) << "\n";
  } else {
    o << "family,params,m1,m2,case";
    for (int i = 1; i <= arr.rank; ++i) o << ",e" << i;
    o << ",saito_c,runtime_ms,status\n";
    for (size_t i = 0; i < cells.size(); ++i) {
      const auto& c = cells[i];
      const auto& r = results[i];
      o << family_name(arr.family) << "," << params_of(arr) << "," << c.m1 << "," << c.m2 << "," << c.case_tag;
      for (int k = 0; k < arr.rank; ++k) o << "," << (r.ok ? std::to_string(r.cert.exponents[k]) : "");
      o << "," << (r.ok ? r.cert.saito_c.to_string() : "") << "," << runtime(r) << ","
        << (r.ok ? "ok" : "fail") << "\n";
    }
  }
  emit(cfg, o.str());
  for (size_t i = 0; i < cells.size(); ++i)
    if (!results[i].ok)
      std::cerr << "cell m = (" << cells[i].m1 << ", " << cells[i].m2 << "): " << results[i].error << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Free bases of Coxeter multiarrangements, constructed and verified exactly."};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_family = [&](CLI::App* sub) {
    sub->add_option("--family", cfg.family, "B, F4, G2 or I2")->required();
    sub->add_option("--rank", cfg.rank, "rank for B");
    sub->add_option("--n", cfg.n, "n for I2(2n)");
    sub->add_option("-o,--output", cfg.output, "output file (default stdout)");
    sub->add_option("--pole-cap", cfg.pole_cap, "pole-bound escalation cap (env COXDER_POLE_CAP)");
  };

  auto* info = app.add_subcommand("info", "arrangement summary");
  add_family(info);
  info->add_option("--format", cfg.format, "json or text");

  auto* basis = app.add_subcommand("basis", "construct and self-verify a basis certificate");
  add_family(basis);
  basis->add_option("--p", cfg.p);
  basis->add_option("--q", cfg.q);
  basis->add_option("--case", cfg.case_tag, "1..4");
  basis->add_option("--m1", cfg.m1);
  basis->add_option("--m2", cfg.m2);
  basis->add_option("--format", cfg.format, "json or text");

  auto* verify = app.add_subcommand("verify", "re-check a certificate from scratch");
  verify->add_option("certificate", cfg.input, "certificate JSON file")->required();
  verify->add_option("--format", cfg.format, "json or text");
  verify->add_option("-o,--output", cfg.output);

  auto* sweep = app.add_subcommand("sweep", "construct and verify every cell of a window");
  add_family(sweep);
  sweep->add_option("--m1", cfg.m1_range, "LO:HI");
  sweep->add_option("--m2", cfg.m2_range, "LO:HI");
  sweep->add_option("--p", cfg.p_range, "LO:HI");
  sweep->add_option("--q", cfg.q_range, "LO:HI");
  sweep->add_option("--cases", cfg.cases, "comma separated, default 1,2,3,4");
  sweep->add_option("--format", cfg.format, "csv or json");
  sweep->add_flag("--timing", cfg.timing, "fill runtime_ms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int r = app.exit(e);
    return r == 0 ? 0 : kUsage;
  }
  if (sweep->parsed() && !sweep->count("--format")) cfg.format = "csv";

  try {
    if (info->parsed()) return cmd_info(cfg);
    if (basis->parsed()) return cmd_basis(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
    return cmd_sweep(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const VerificationError& e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const std::exception& e) {
    std::cerr << "construction failed: " << e.what() << "\n";
    return kConstruction;
  }
}
