#include "deltalab/census/exponents.hpp"
#include "deltalab/census/family.hpp"
#include "deltalab/census/reports.hpp"
#include "deltalab/store/csv.hpp"
#include "deltalab/store/import.hpp"
#include "deltalab/store/store.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

using namespace deltalab;

namespace {

enum Exit { kOk = 0, kUsage = 2, kIncomplete = 3, kClassification = 4, kInternal = 1 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

int fail(const std::string &kind, const std::string &message, int code) {
  json j = {{"error", kind}, {"message", message}, {"exit", code}};
  std::cerr << j.dump() << "\n";
  return code;
}

std::string default_store() {
  if (const char *v = std::getenv("DELTA_LAB_STORE")) return v;
  return "delta-lab-store";
}

/// DELTA_LAB_ABORT_AFTER=N stops the process right after the N-th stored
/// record, as a kill would; used to exercise resume.
void count_append() {
  static long n = 0;
  static const long limit = [] {
    const char *v = std::getenv("DELTA_LAB_ABORT_AFTER");
    return v ? std::strtol(v, nullptr, 10) : 0L;
  }();
  if (limit > 0 && ++n >= limit) std::_Exit(137);
}

IntPolynomial parse_poly(const std::string &text) {
  try {
    return IntPolynomial::parse(text);
  } catch (const std::exception &e) {
    throw UsageError("cannot parse polynomial '" + text + "': " + e.what());
  }
}

BigRational parse_q(const std::string &text, const char *what) {
  try {
    return parse_rational(text);
  } catch (const std::exception &) {
    throw UsageError(std::string(what) + ": malformed rational '" + text + "'");
  }
}

BigInt parse_z(const std::string &text, const char *what) {
  try {
    return parse_integer(text);
  } catch (const std::exception &) {
    throw UsageError(std::string(what) + ": malformed integer '" + text + "'");
  }
}

std::string decimal(const RealBall &b, int digits = 20) { return b.center().to_decimal(digits); }

/// delta as text: the exact form M^(1/D) with M an integer when possible.
std::string delta_text(const HeightValue &h) {
  int D = h.degree();
  if (auto e = h.structure().exact_integer()) {
    if (*e == 1) return "1";
    for (int g = D; g >= 2; --g) {
      BigInt r;
      if (D % g != 0 || mpz_root(r.get_mpz_t(), e->get_mpz_t(), static_cast<unsigned long>(g)) == 0) continue;
      return g == D ? r.get_str() : r.get_str() + "^(1/" + std::to_string(D / g) + ")";
    }
    return e->get_str() + "^(1/" + std::to_string(D) + ")";
  }
  return "M(" + h.measure_poly().to_string() + ")^(1/" + std::to_string(D) + ")";
}

std::optional<IntPolynomial> optional_poly(const std::string &text) {
  if (text.empty()) return std::nullopt;
  return parse_poly(text);
}

void emit(const CsvReport &rep, const std::string &out) {
  if (out.empty() || out == "-") {
    rep.write(std::cout);
    return;
  }
  std::ofstream f(out, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + out);
  rep.write(f);
}

std::vector<std::pair<std::string, std::string>> store_conventions() {
  std::vector<std::pair<std::string, std::string>> out;
  auto c = CensusStore::conventions();
  for (auto it = c.begin(); it != c.end(); ++it)
    if (it.key() != "precision_cap_bits") out.emplace_back(it.key(), it.value().get<std::string>());
  return out;
}

std::string membership_of(const CensusRecord &r, const BigRational &g) {
  for (const auto &[gamma, m] : r.flags)
    if (gamma == g) return to_string(m);
  return "";
}

// ---------------------------------------------------------------------------

struct CensusArgs {
  int degree = 0;
  std::string disc_bound, subfield, policy, height_max, height_cap = "64", store;
  std::vector<std::string> gammas;
};

int run_census_build(const CensusArgs &a) {
  BigInt T = parse_z(a.disc_bound, "--disc-bound");
  if (T < 1) throw UsageError("--disc-bound must be positive");
  BigRational cap = parse_q(a.height_cap, "--height-cap");
  std::vector<BigRational> gammas;
  for (const auto &g : a.gammas) gammas.push_back(parse_q(g, "--gamma"));
  auto subfield = optional_poly(a.subfield);
  std::string policy = a.policy.empty() ? (subfield ? "relative" : "oracle") : a.policy;
  if (policy != "oracle" && policy != "relative" && policy != "sweep") throw UsageError("unknown policy '" + policy + "'");
  if (policy == "sweep" && a.height_max.empty()) throw UsageError("--policy sweep needs --height-max");
  if (policy != "sweep" && !a.height_max.empty()) throw UsageError("--height-max applies to --policy sweep only");
  if (policy == "oracle" && subfield) throw UsageError("the oracle policy lists quadratic fields; drop --subfield");

  CensusStore store = CensusStore::open(a.store.empty() ? default_store() : a.store);
  StoreSelection ss;
  ss.degree = a.degree;
  ss.disc_bound = T;
  ss.policy = policy;
  Census c;
  std::string log;
  if (policy == "sweep") {
    if (subfield) throw UsageError("--subfield is not used by the sweep policy");
    BigRational H = parse_q(a.height_max, "--height-max");
    ss.selection = "degree " + std::to_string(a.degree) + " fields, generator height <= " + to_string(H);
    ss.complete = false;
    ss.caveat = "lists only fields with delta <= " + to_string(H);
    log = store.register_selection(ss);
    c = sweep_census(a.degree, T, H, gammas, [&](const CensusRecord &r) {
      if (store.append(log, r)) count_append();
    });
  } else {
    Selection sel = selection_for(a.degree, subfield);
    if (sel.policy() != policy)
      throw IncompleteCensus("policy " + policy + " does not apply to " + sel.name() + "; use " + sel.policy());
    ss.selection = sel.name();
    log = store.register_selection(ss);
    auto existing = read_records(store, log);
    c = build_census(sel, T, gammas, cap, existing, [&](const CensusRecord &r) {
      if (store.append(log, r)) count_append();
    });
  }
  json out = {{"store", store.dir().string()}, {"log", log},          {"selection", ss.selection},
              {"policy", policy},             {"disc_bound", T.get_str()}, {"fields", c.records.size()},
              {"complete", ss.complete}};
  std::cout << out.dump() << "\n";
  return kOk;
}

int run_delta(const std::string &poly, const std::string &height_cap) {
  IntPolynomial f = parse_poly(poly);
  if (f.degree() < 2) throw UsageError("delta needs a polynomial of degree at least 2");
  if (!is_irreducible(f)) throw UsageError("polynomial " + f.to_string() + " is not irreducible");
  NumberField L = NumberField::from_poly(f);
  DeltaResult d = delta(L, parse_q(height_cap, "--height-cap"));
  std::cout << "field: " << L.defining_poly.to_string() << "\n";
  std::cout << "discriminant: " << L.discriminant.get_str() << "\n";
  std::cout << "delta: " << delta_text(d.height) << "\n";
  std::cout << "delta_decimal: " << decimal(d.height.value()) << "\n";
  std::cout << "realizing: " << d.realizing_poly.to_string() << "\n";
  if (d.ties.size() > 1) {
    std::cout << "also realizing:";
    for (size_t i = 1; i < d.ties.size(); ++i) std::cout << " " << d.ties[i].to_string() << (i + 1 < d.ties.size() ? ";" : "");
    std::cout << "\n";
  }
  return kOk;
}

int run_family(int D, int count) {
  if (D < 2) throw UsageError("--degree must be at least 2");
  if (count < 1) throw UsageError("--count must be positive");
  CsvReport rep;
  rep.title = "totally ramified family q x^D - p";
  rep.config = {{"command", "family"}, {"degree", std::to_string(D)}, {"count", std::to_string(count)}};
  rep.conventions = store_conventions();
  rep.columns = {"p", "q", "degree", "poly", "discriminant", "height", "middle", "right", "eisenstein", "irreducible",
                 "height_exact", "ramification", "chain_first", "chain_second", "all"};
  auto pf = [](bool b) { return std::string(b ? "PASS" : "FAIL"); };
  bool all = true;
  for (const auto &it : ruppert_family(D, count)) {
    all = all && it.checks.all();
    rep.rows.push_back({std::to_string(it.p), std::to_string(it.q), std::to_string(D), it.poly.to_string(),
                        it.field.discriminant.get_str(), std::to_string(it.q) + "^(1/" + std::to_string(D) + ")",
                        decimal(it.middle), decimal(it.right), pf(it.checks.eisenstein), pf(it.checks.irreducible),
                        pf(it.checks.height_exact), pf(it.checks.ramification), pf(it.checks.chain_first),
                        pf(it.checks.chain_second), pf(it.checks.all())});
  }
  emit(rep, "");
  return all ? kOk : kClassification;
}

struct DensityArgs {
  int degree = 0;
  std::string gamma, subfield, disc_bound, schedule, out, store, height_cap = "64", cross_check;
};

int run_density(const DensityArgs &a) {
  DensityConfig cfg;
  cfg.degree = a.degree;
  cfg.gamma = parse_q(a.gamma, "--gamma");
  if (cfg.gamma < 0) throw UsageError("--gamma must be non-negative");
  cfg.subfield = optional_poly(a.subfield);
  cfg.height_cap = parse_q(a.height_cap, "--height-cap");
  BigInt T = parse_z(a.disc_bound, "--disc-bound");
  if (T < 1) throw UsageError("--disc-bound must be positive");
  if (a.schedule.empty()) {
    cfg.schedule = default_schedule(T);
  } else {
    std::stringstream ss(a.schedule);
    for (std::string item; std::getline(ss, item, ',');) {
      BigInt v = parse_z(item, "--schedule");
      if (v < 1 || v > T) throw UsageError("--schedule entries must lie in [1, disc-bound]");
      cfg.schedule.push_back(v);
    }
    if (std::find(cfg.schedule.begin(), cfg.schedule.end(), T) == cfg.schedule.end()) cfg.schedule.push_back(T);
  }
  Selection sel = selection_for(cfg.degree, cfg.subfield);

  std::vector<CensusRecord> existing;
  std::optional<CensusStore> store;
  std::string log;
  if (!a.store.empty()) {
    store = CensusStore::open(a.store);
    StoreSelection ss;
    ss.degree = cfg.degree;
    ss.selection = sel.name();
    ss.policy = sel.policy();
    ss.disc_bound = T;
    log = store->register_selection(ss);
    existing = read_records(*store, log);
  }
  DensityReport rep = density_report(cfg, existing, [&](const CensusRecord &r) {
    if (store && store->append(log, r)) count_append();
  });

  CsvReport csv;
  csv.title = "density of S_gamma in " + sel.name();
  csv.config = {{"command", "density"},
                {"degree", std::to_string(cfg.degree)},
                {"subfield", cfg.subfield ? cfg.subfield->to_string() : "none"},
                {"gamma", to_string(cfg.gamma)},
                {"disc_bound", T.get_str()},
                {"height_cap", to_string(cfg.height_cap)},
                {"policy", sel.policy()}};
  std::string sched;
  for (const auto &t : cfg.schedule) sched += (sched.empty() ? "" : ";") + t.get_str();
  csv.config.emplace_back("schedule", sched);
  csv.conventions = store_conventions();
  csv.conventions.emplace_back("membership", "In: delta > |Delta|^gamma, Boundary: equality, Out: delta < |Delta|^gamma");
  unsigned long long failures = 0;
  for (const auto &r : rep.rows) {
    csv.config.emplace_back("summary.T=" + r.T.get_str(),
                            "fields=" + std::to_string(r.fields) + " in=" + std::to_string(r.in) + " boundary=" +
                                std::to_string(r.boundary) + " out=" + std::to_string(r.out) + " undecided=" +
                                std::to_string(r.failures) + " density=" + to_string(r.ratio));
    failures = std::max(failures, r.failures);
  }
  if (sel.subfield()) {
    BigInt bound = a.cross_check.empty() ? std::min(T, BigInt(2048)) : parse_z(a.cross_check, "--cross-check");
    if (bound > T) throw UsageError("--cross-check bound exceeds --disc-bound");
    CrossCheck cc = relative_cross_check(sel, rep.census, bound);
    csv.config.emplace_back("cross_check",
                            std::string(cc.agree ? "agree" : "DISAGREE") + " |Delta|<=" + bound.get_str() + " census=" +
                                std::to_string(cc.census_fields) + " sweep=" + std::to_string(cc.sweep_fields) +
                                " swept_measure=" + to_string(cc.swept));
    if (!cc.agree) failures = std::max<unsigned long long>(failures, 1);
  }
  csv.columns = {"class_id", "discriminant", "realizing_poly", "delta", "delta_decimal", "membership"};
  for (const auto &r : rep.census.records)
    csv.rows.push_back({r.class_id, r.field.discriminant.get_str(), r.realizing_poly.to_string(), delta_text(r.delta),
                        decimal(r.delta.value()), membership_of(r, cfg.gamma)});
  emit(csv, a.out);
  if (failures) return fail("classification_failure", "density: undecided classifications or cross-check disagreement", kClassification);
  return kOk;
}

int run_verify_silverman(const std::string &dir) {
  if (!std::filesystem::exists(std::filesystem::path(dir) / "manifest.json")) throw UsageError("no census store at " + dir);
  CensusStore store = CensusStore::open(dir);
  CsvReport csv;
  csv.title = "Silverman lower bound for delta";
  csv.config = {{"command", "verify silverman"}, {"store", dir}};
  csv.conventions = store_conventions();
  csv.columns = {"class_id", "discriminant", "realizing_poly", "delta", "bound", "verdict"};
  size_t bad = 0, eq = 0, n = 0;
  for (const auto &log : store.logs())
    for (const auto &r : read_records(store, log)) {
      SilvermanVerdict v = verify_silverman(r);
      ++n;
      if (v == SilvermanVerdict::HoldsWithEquality) ++eq;
      if (v == SilvermanVerdict::Violated || v == SilvermanVerdict::Undecided) ++bad;
      csv.rows.push_back({r.class_id, r.field.discriminant.get_str(), r.realizing_poly.to_string(), decimal(r.delta.value()),
                          decimal(silverman_bound(r.degree(), r.field.discriminant)), to_string(v)});
    }
  csv.config.emplace_back("summary", "records=" + std::to_string(n) + " equality=" + std::to_string(eq) +
                                         " violated_or_undecided=" + std::to_string(bad));
  emit(csv, "");
  return bad ? fail("classification_failure", std::to_string(bad) + " records not verified", kClassification) : kOk;
}

int run_ratios(const std::string &dir, const std::string &out) {
  if (!std::filesystem::exists(std::filesystem::path(dir) / "manifest.json")) throw UsageError("no census store at " + dir);
  CensusStore store = CensusStore::open(dir);
  std::vector<CensusRecord> recs = store.read_all();
  CsvReport csv;
  csv.title = "log delta / log |Delta|";
  csv.config = {{"command", "ratios"}, {"store", dir}};
  csv.conventions = store_conventions();
  csv.columns = {"class_id", "degree", "discriminant", "abs_discriminant", "realizing_poly", "delta", "ratio", "ratio_radius", "exact_ratio"};
  for (const auto &row : ratio_scatter(recs))
    csv.rows.push_back({row.class_id, std::to_string(row.realizing_poly.degree()), row.disc.get_str(),
                        BigInt(abs(row.disc)).get_str(), row.realizing_poly.to_string(), decimal(row.delta), decimal(row.ratio),
                        row.ratio.radius().to_decimal(3), row.exact ? to_string(*row.exact) : ""});
  emit(csv, out);
  return kOk;
}

int run_exponents(int D, const std::string &nu) {
  if (D < 2) throw UsageError("--degree must be at least 2");
  std::optional<BigRational> n;
  if (!nu.empty()) n = parse_q(nu, "--nu");
  ExponentReport r = exponent_comparison(D, n);
  std::cout << "degree: " << D << "\n";
  std::cout << "smallest_divisor: " << r.smallest_divisor << "\n";
  std::cout << "gamma_threshold: " << to_string(r.gamma) << "\n";
  std::cout << "silverman_exponent: " << to_string(r.silverman) << "\n";
  std::cout << "sqrt_exponent: 1/(2*" << D << "*(sqrt(" << D << ")+1)) = " << decimal(r.sqrt_exponent) << "\n";
  std::cout << "gamma_threshold vs sqrt_exponent: " << to_string(r.gamma_vs_sqrt) << "\n";
  std::cout << "sqrt_exponent vs silverman_exponent: " << to_string(r.sqrt_vs_silverman) << "\n";
  std::cout << "gamma_threshold vs silverman_exponent: " << to_string(r.gamma_vs_silverman) << "\n";
  if (r.nu) {
    std::cout << "nu_over_theta: " << to_string(*r.nu_over_theta) << "\n";
    std::cout << "nu_over_theta vs silverman_exponent: " << to_string(r.nu_ratio_vs_silverman) << "\n";
  }
  return kOk;
}

int run_import(const std::string &file, bool check) {
  if (!check) throw UsageError("import needs --check-disc");
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read " + file);
  auto rows = import_table(in);
  std::cout << "line,status,poly,claimed,computed,message\n";
  size_t match = 0, mismatch = 0, malformed = 0;
  for (const auto &r : rows) {
    (r.status == ImportStatus::Match ? match : r.status == ImportStatus::Mismatch ? mismatch : malformed)++;
    std::cout << r.line << "," << to_string(r.status) << "," << csv_field(r.poly) << "," << r.claimed << "," << r.computed
              << "," << csv_field(r.message) << "\n";
  }
  std::cout << "# rows=" << rows.size() << " match=" << match << " mismatch=" << mismatch << " malformed=" << malformed << "\n";
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"delta lab: minimal generator heights of number fields"};
  app.require_subcommand(1);

  auto *census = app.add_subcommand("census", "field census");
  census->require_subcommand(1);
  auto *build = census->add_subcommand("build", "build or extend a census in the store");
  CensusArgs ca;
  build->add_option("--degree", ca.degree, "field degree")->required();
  build->add_option("--disc-bound", ca.disc_bound, "bound on |Delta|")->required();
  build->add_option("--subfield", ca.subfield, "quadratic subfield, as a defining polynomial");
  build->add_option("--policy", ca.policy, "oracle, relative or sweep");
  build->add_option("--height-max", ca.height_max, "generator height bound for the sweep policy");
  build->add_option("--height-cap", ca.height_cap, "give up past this generator height");
  build->add_option("--gamma", ca.gammas, "classify against |Delta|^gamma (repeatable)");
  build->add_option("--store", ca.store, "store directory (default $DELTA_LAB_STORE)");

  auto *dcmd = app.add_subcommand("delta", "delta of one field");
  std::string poly, dcap = "64";
  dcmd->add_option("--poly", poly, "defining polynomial")->required();
  dcmd->add_option("--height-cap", dcap, "give up past this generator height");

  auto *fam = app.add_subcommand("family", "totally ramified family checks");
  int fdeg = 0, fcount = 0;
  fam->add_option("--degree", fdeg)->required();
  fam->add_option("--count", fcount)->required();

  auto *dens = app.add_subcommand("density", "proportion of S_gamma among census fields");
  DensityArgs da;
  dens->add_option("--degree", da.degree)->required();
  dens->add_option("--gamma", da.gamma)->required();
  dens->add_option("--subfield", da.subfield);
  dens->add_option("--disc-bound", da.disc_bound)->required();
  dens->add_option("--schedule", da.schedule, "comma-separated bounds (default T/16 .. T)");
  dens->add_option("--out", da.out, "CSV output file (default stdout)");
  dens->add_option("--store", da.store, "reuse and extend this store");
  dens->add_option("--height-cap", da.height_cap);
  dens->add_option("--cross-check", da.cross_check, "|Delta| bound for the enumerator cross-check (default 2048)");

  auto *verify = app.add_subcommand("verify", "checks over a stored census");
  verify->require_subcommand(1);
  auto *silv = verify->add_subcommand("silverman", "delta against the Silverman bound");
  std::string vstore;
  silv->add_option("--store", vstore)->required();

  auto *rat = app.add_subcommand("ratios", "log delta / log |Delta| scatter");
  std::string rstore, rout;
  rat->add_option("--store", rstore)->required();
  rat->add_option("--out", rout)->required();

  auto *expo = app.add_subcommand("exponents", "exponent arithmetic");
  int edeg = 0;
  std::string nu;
  expo->add_option("--degree", edeg)->required();
  expo->add_option("--nu", nu, "exponent nu for the nu/theta comparison");

  auto *imp = app.add_subcommand("import", "reconcile an external field table");
  std::string ifile;
  bool icheck = false;
  imp->add_option("--file", ifile)->required();
  imp->add_flag("--check-disc", icheck, "recompute and compare discriminants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    return fail("usage", e.what(), kUsage);
  }

  try {
    if (*build) return run_census_build(ca);
    if (*dcmd) return run_delta(poly, dcap);
    if (*fam) return run_family(fdeg, fcount);
    if (*dens) return run_density(da);
    if (*silv) return run_verify_silverman(vstore);
    if (*rat) return run_ratios(rstore, rout);
    if (*expo) return run_exponents(edeg, nu);
    if (*imp) return run_import(ifile, icheck);
  } catch (const UsageError &e) {
    return fail("usage", e.what(), kUsage);
  } catch (const IncompleteCensus &e) {
    return fail("incomplete_census", e.what(), kIncomplete);
  } catch (const ClassificationFailure &e) {
    return fail("classification_failure", e.what(), kClassification);
  } catch (const RefinementError &e) {
    return fail("classification_failure", e.what(), kClassification);
  } catch (const StoreVersionError &e) {
    return fail("store_version", e.what(), kUsage);
  } catch (const std::invalid_argument &e) {
    return fail("usage", e.what(), kUsage);
  } catch (const std::domain_error &e) {
    return fail("usage", e.what(), kUsage);
  } catch (const std::exception &e) {
    return fail("internal", e.what(), kInternal);
  }
  return kUsage;
}
