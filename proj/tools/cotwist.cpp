// Batch front-end. Reports go to standard out as JSON with sorted keys (or
// TSV); diagnostics and progress go to standard error.
//
// Exit codes: 0 every executed claim passed, 1 some claim failed, 2 usage or
// configuration error.

#include <algorithm>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cotwist/casebook.hpp"
#include "cotwist/constructions.hpp"
#include "cotwist/curves.hpp"
#include "cotwist/h1.hpp"

namespace {

using namespace cotwist;
using json = nlohmann::json;

constexpr int kPass = 0, kFail = 1, kUsage = 2;

constexpr const char* kTsvHelp = R"(TSV columns:
  casebook --format tsv   case, q, claims, passed, verdict
  count --format tsv      curve, d, count
  h1 search --format tsv  x, y, agreeing_divisors)";

struct Options {
  std::uint64_t p = 0, r = 0, s = 0;
  std::string variant = "auto";
  std::optional<std::uint64_t> q;
  std::uint32_t max_ext = 0;
  std::string group, aut = "id";
  std::uint64_t limit = 0;
  bool distinct_classes = false;
  std::string format = "json";
  int workers = 1;
  std::string in, out;
  bool timestamps = false;
  std::string case_id;
};

class Output {
 public:
  explicit Output(const Options& o) : opts_(o) {}

  void json_doc(json j) const {
    if (opts_.timestamps) j["generated_at"] = std::time(nullptr);
    text(j.dump(2) + "\n");
  }

  void text(const std::string& s) const {
    if (opts_.out.empty()) {
      std::cout << s;
      return;
    }
    std::ofstream f(opts_.out);
    if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + opts_.out);
    f << s;
  }

 private:
  const Options& opts_;
};

json read_json_file(const std::string& path) {
  if (path.empty()) throw Error(ErrorCode::InvalidInput, "--in is required");
  std::ifstream f(path);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

std::vector<curves::CurveModel> read_curves(const std::string& path) {
  const json j = read_json_file(path);
  std::vector<curves::CurveModel> out;
  try {
    if (j.is_array()) {
      for (const auto& c : j) out.push_back(curves::CurveModel::from_json(c));
    } else {
      out.push_back(curves::CurveModel::from_json(j));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, "bad curve JSON: " + std::string(e.what()));
  }
  if (out.empty()) throw Error(ErrorCode::InvalidInput, "no curves in " + path);
  return out;
}

int run_construct(const Options& o) {
  std::optional<constructions::Variant> v;
  if (o.variant != "auto") v = constructions::variant_from_name(o.variant);
  const auto b = constructions::construct(o.p, o.r, o.s, v);
  Output(o).json_doc(b.to_json());
  if (o.max_ext == 0) return kPass;
  // With --max-ext the bundle is also verified; the report goes to stderr.
  const auto rep = constructions::verify_bundle(b, o.max_ext, o.workers);
  for (const auto& vd : rep.verdicts) std::cerr << vd.name << ": " << constructions::status_name(vd.status) << '\n';
  return rep.pass() ? kPass : kFail;
}

int run_verify(const Options& o) {
  const json j = read_json_file(o.in);
  const auto b = [&] {
    try {
      return constructions::TwistPairBundle::from_json(j);
    } catch (const json::exception& e) {
      throw Error(ErrorCode::InvalidInput, "bad bundle JSON: " + std::string(e.what()));
    }
  }();
  const auto rep = constructions::verify_bundle(b, o.max_ext, o.workers);
  Output(o).json_doc(rep.to_json());
  return rep.pass() ? kPass : kFail;
}

int run_h1_search(const Options& o) {
  if (o.group.empty()) throw Error(ErrorCode::InvalidInput, "--group is required");
  if (o.r < 1 || o.s < 1) throw Error(ErrorCode::InvalidInput, "--r and --s must be positive");
  const auto g = curves::parse_group(o.group);
  const h1::TwistedSetting st(g, curves::parse_group_aut(g, o.aut));
  const auto search = h1::find_pair_witnesses(st, o.r, o.s, o.limit, o.workers);
  const auto ws = o.distinct_classes ? h1::distinct_classes(st, search.witnesses) : search.witnesses;
  const auto report = h1::theorem_constraint_report(st, o.r, o.s, ws);

  if (o.format == "tsv") {
    std::ostringstream os;
    os << "x\ty\tagreeing_divisors\n";
    for (const auto& w : ws) {
      os << w.x << '\t' << w.y << '\t';
      bool first = true;
      for (const auto& d : w.divisors)
        if (d.agrees) os << (first ? "" : ",") << d.d, first = false;
      os << '\n';
    }
    Output(o).text(os.str());
  } else {
    json list = json::array();
    for (const auto& w : ws) list.push_back(h1::witness_to_json(st, w));
    Output(o).json_doc({{"group", g->label()},
                        {"order", g->order()},
                        {"aut", o.aut},
                        {"r", o.r},
                        {"s", o.s},
                        {"pairs_swept", search.pairs_swept},
                        {"witnesses", list},
                        {"theorem_report", report.to_json()}});
  }
  return report.pass() ? kPass : kFail;
}

int run_casebook(const Options& o) {
  std::vector<casebook::CaseReport> reps;
  if (o.case_id == "all") {
    if (o.q) throw Error(ErrorCode::InvalidInput, "--q does not apply to 'casebook all'");
    const auto& ids = casebook::case_ids();
    for (const auto& id : ids)
      for (auto q : casebook::suite_sizes(id)) {
        std::cerr << "casebook " << id << (id == "genus1-groups" ? "" : " q=" + std::to_string(q)) << '\n';
        const auto t0 = std::chrono::steady_clock::now();
        reps.push_back(
            casebook::run_case(id, id == "genus1-groups" ? std::nullopt : std::optional(q), o.workers));
        const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
        std::cerr << "  " << (reps.back().pass() ? "pass" : "FAIL") << " in " << dt.count() << " s\n";
      }
  } else {
    reps.push_back(casebook::run_case(o.case_id, o.q, o.workers));
  }

  if (o.format == "tsv") {
    Output(o).text(casebook::summary_tsv(reps));
  } else if (reps.size() == 1) {
    Output(o).json_doc(reps.front().to_json());
  } else {
    json all = json::array();
    for (const auto& r : reps) all.push_back(r.to_json());
    Output(o).json_doc({{"reports", all}, {"summary_tsv", casebook::summary_tsv(reps)}});
  }
  for (const auto& r : reps) {
    if (r.pass()) continue;
    for (const auto& c : r.claims)
      if (!c.pass) std::cerr << "failed claim: " << r.id << ' ' << c.anchor << '\n';
  }
  const bool ok = std::all_of(reps.begin(), reps.end(), [](const auto& r) { return r.pass(); });
  return ok ? kPass : kFail;
}

// Over the degree-max_ext extension of the common base (1 if unset).
int run_mass(const Options& o) {
  const auto cs = read_curves(o.in);
  for (const auto& c : cs)
    if (c.base()->q() != cs.front().base()->q())
      throw Error(ErrorCode::InvalidInput, "curves must share a base field");
  const auto field = curves::extension(cs.front().base(), std::max<std::uint32_t>(o.max_ext, 1));
  json orders = json::array();
  for (const auto& c : cs) orders.push_back(curves::rational_automorphisms(c, field, o.workers).maps.size());
  const auto m = curves::mass_check(cs, field, o.workers);
  const bool one = m == curves::Rational{1, 1};
  Output(o).json_doc({{"field", field->q()}, {"aut_orders", orders}, {"mass", m.str()}, {"mass_is_one", one}});
  return one ? kPass : kFail;
}

// Point counts for d = 1..max_ext (default 3), with the enumeration oracle
// where the field is small enough.
int run_count(const Options& o) {
  const auto cs = read_curves(o.in);
  const std::uint32_t top = o.max_ext ? o.max_ext : 3;
  bool ok = true;
  json rows = json::array();
  std::ostringstream tsv;
  tsv << "curve\td\tcount\n";
  for (std::size_t i = 0; i < cs.size(); ++i)
    for (std::uint32_t d = 1; d <= top; ++d) {
      const auto n = curves::count_points(cs[i], d, o.workers);
      json row{{"curve", i}, {"describe", cs[i].describe()}, {"d", d}, {"count", n}};
      if (nt::bounded_pow(cs[i].base()->q(), d, 20'000)) {
        const auto ref = curves::count_points_naive(cs[i], d);
        row["oracle"] = ref;
        ok = ok && ref == n;
      }
      rows.push_back(std::move(row));
      tsv << i << '\t' << d << '\t' << n << '\n';
    }
  if (o.format == "tsv") {
    Output(o).text(tsv.str());
  } else {
    Output(o).json_doc({{"counts", rows}, {"oracle_agrees", ok}});
  }
  return ok ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Twists of curves over finite fields with prescribed minimal isomorphism extensions"};
  app.footer(kTsvHelp);
  app.require_subcommand(1);

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--workers", o.workers, "Worker threads for partitioned sweeps")->check(CLI::PositiveNumber);
    sub->add_option("--out", o.out, "Write the report here instead of standard out");
    sub->add_flag("--timestamps", o.timestamps, "Add a generated_at field to JSON output");
  };
  const auto format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "tsv"}));
  };

  auto* construct = app.add_subcommand("construct", "Build a twist pair for (p, r, s)");
  construct->add_option("--p", o.p, "Characteristic")->required();
  construct->add_option("--r", o.r, "First degree")->required();
  construct->add_option("--s", o.s, "Second degree")->required();
  construct->add_option("--variant", o.variant, "Construction variant")
      ->check(CLI::IsMember({"auto", "prsodd", "prseven", "ps"}));
  construct->add_option("--max-ext", o.max_ext, "Also verify, with fingerprints up to this degree");
  common(construct);

  auto* verify = app.add_subcommand("verify", "Verify a stored bundle");
  verify->add_option("--in", o.in, "Bundle JSON from construct")->required();
  verify->add_option("--max-ext", o.max_ext, "Largest fingerprint degree (0 = max(L, M))");
  common(verify);

  auto* h1cmd = app.add_subcommand("h1", "Twisted conjugacy computations");
  h1cmd->require_subcommand(1);
  auto* search = h1cmd->add_subcommand("search", "Pairs whose restrictions agree exactly at r and s");
  search->add_option("--group", o.group, "Group spec, e.g. dihedral:6, sl2:3, group108, curveaut:x6+1:7")
      ->required();
  search->add_option("--aut", o.aut, "Automorphism spec: id, inv, flip, pow:k:l, inner:i, frob");
  search->add_option("--r", o.r, "First degree")->required();
  search->add_option("--s", o.s, "Second degree")->required();
  search->add_option("--limit", o.limit, "Keep at most this many witnesses (0 = all)");
  search->add_flag("--distinct-classes", o.distinct_classes, "One witness per pair of twisted classes");
  format(search);
  common(search);

  auto* cb = app.add_subcommand("casebook", "Run a finite verification case, or all of them");
  cb->add_option("case", o.case_id, "Case id or 'all'")
      ->required()
      ->check(CLI::IsMember([] {
        auto ids = casebook::case_ids();
        ids.push_back("all");
        return ids;
      }()));
  cb->add_option("--q", o.q, "Field size");
  format(cb);
  common(cb);

  auto* mass = app.add_subcommand("mass", "Sum of 1/#Aut over a list of curves");
  mass->add_option("--in", o.in, "Curve JSON (object or array)")->required();
  mass->add_option("--max-ext", o.max_ext, "Extension degree of the field of definition (default 1)");
  common(mass);

  auto* count = app.add_subcommand("count", "Point counts over extensions");
  count->add_option("--in", o.in, "Curve JSON (object or array)")->required();
  count->add_option("--max-ext", o.max_ext, "Largest extension degree (default 3)");
  format(count);
  common(count);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kPass : kUsage;
  }

  try {
    if (*construct) return run_construct(o);
    if (*verify) return run_verify(o);
    if (*search) return run_h1_search(o);
    if (*cb) return run_casebook(o);
    if (*mass) return run_mass(o);
    if (*count) return run_count(o);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::NoSuitableT ? kFail : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
