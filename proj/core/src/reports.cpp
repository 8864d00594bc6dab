#include "eqdist/reports.hpp"

#include <json.hpp>
#include <sstream>

#include "eqdist/distribution.hpp"
#include "eqdist/errors.hpp"
#include "eqdist/textio.hpp"

namespace eqdist {

namespace {

using Json = nlohmann::ordered_json;

Json profile_json(const std::vector<BigInt>& counts) {
  Json arr = Json::array();
  for (const BigInt& c : counts) arr.push_back(c.str());
  return arr;
}

std::vector<BigInt> profile_from_json(const Json& arr) {
  std::vector<BigInt> out;
  for (const auto& v : arr) out.emplace_back(v.get<std::string>());
  return out;
}

Json multiset_json(const MultisetEntries& entries) {
  Json arr = Json::array();
  for (const auto& [res, mult] : entries) arr.push_back(Json::array({res, mult}));
  return arr;
}

MultisetEntries multiset_from_json(const Json& arr) {
  MultisetEntries out;
  for (const auto& e : arr)
    out.emplace_back(e.at(0).get<std::uint64_t>(), e.at(1).get<std::uint64_t>());
  return out;
}

Json blocks_json(const std::vector<BlockSummary>& blocks) {
  Json arr = Json::array();
  for (const auto& b : blocks) {
    Json j;
    j["leader"] = b.leader;
    j["signs"] = b.signs;
    j["residues"] = b.residues;
    j["s_plus"] = b.s_plus.str();
    arr.push_back(std::move(j));
  }
  return arr;
}

std::vector<BlockSummary> blocks_from_json(const Json& arr) {
  std::vector<BlockSummary> out;
  for (const auto& j : arr) {
    BlockSummary b;
    b.leader = j.at("leader").get<std::uint64_t>();
    b.signs = j.at("signs").get<std::string>();
    b.residues = j.at("residues").get<std::vector<std::uint64_t>>();
    b.s_plus = BigInt(j.at("s_plus").get<std::string>());
    out.push_back(std::move(b));
  }
  return out;
}

BlockSummary summarize(const GeometricBlock& blk) {
  return BlockSummary{blk.leader, format_signs(blk.signs), blk.residues, blk.s_plus};
}

MultisetEntries entries_of(const ResidueMultiset& a) { return a.entries(); }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("report parse: ") + e.what());
  }
}

// Field extraction shares the same error surface as syntax errors.
template <typename Fn>
auto guarded(Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("report parse: ") + e.what());
  }
}

Json count_json(const CountReport& rep) {
  Json j;
  j["command"] = "count";
  j["modulus"] = rep.modulus;
  j["phi"] = rep.phi;
  j["r"] = rep.r;
  j["parity"] = to_string(rep.parity);
  Json counts;
  counts["formula"] = rep.formula_value.str();
  counts["configurations"] = rep.configuration_count.str();
  counts["distinct_sets"] = rep.distinct_set_count.str();
  if (rep.brute_force_count)
    counts["brute_force"] = rep.brute_force_count->str();
  else
    counts["brute_force"] = rep.brute_force_note;
  Json flags;
  flags["formula_vs_config"] = rep.flags.formula_vs_config;
  flags["formula_vs_sets"] = rep.flags.formula_vs_sets;
  if (rep.flags.sets_vs_bruteforce)
    flags["sets_vs_bruteforce"] = *rep.flags.sets_vs_bruteforce;
  else
    flags["sets_vs_bruteforce"] = nullptr;
  counts["flags"] = std::move(flags);
  j["counts"] = std::move(counts);
  return j;
}

CountReport count_from_json(const Json& j) {
  CountReport rep;
  rep.modulus = j.at("modulus").get<std::uint64_t>();
  rep.phi = j.at("phi").get<std::uint64_t>();
  rep.r = j.at("r").get<std::uint64_t>();
  rep.parity = j.at("parity").get<std::string>() == "odd_r" ? ParityCase::odd_r
                                                            : ParityCase::even_r;
  const Json& counts = j.at("counts");
  rep.formula_value = BigInt(counts.at("formula").get<std::string>());
  rep.configuration_count = BigInt(counts.at("configurations").get<std::string>());
  rep.distinct_set_count = BigInt(counts.at("distinct_sets").get<std::string>());
  const std::string brute = counts.at("brute_force").get<std::string>();
  if (brute.rfind("skipped", 0) == 0)
    rep.brute_force_note = brute;
  else
    rep.brute_force_count = BigInt(brute);
  const Json& flags = counts.at("flags");
  rep.flags.formula_vs_config = flags.at("formula_vs_config").get<bool>();
  rep.flags.formula_vs_sets = flags.at("formula_vs_sets").get<bool>();
  if (!flags.at("sets_vs_bruteforce").is_null())
    rep.flags.sets_vs_bruteforce = flags.at("sets_vs_bruteforce").get<bool>();
  return rep;
}

}  // namespace

AnalyzeReport run_analyze(const ResidueMultiset& a) {
  if (a.modulus() < 3) throw DomainError("analyze: modulus must be >= 3");
  const RingContext ctx = build_context(a.modulus());
  AnalyzeReport rep;
  rep.modulus = ctx.n;
  rep.phi = ctx.phi;
  rep.r = ctx.order_of_two;
  rep.multiset = entries_of(a);
  rep.k = a.cardinality();
  const DistributionProfile prof = subset_sum_distribution(a);
  rep.profile = prof.counts;
  rep.uniform = is_equidistributed(prof);
  const NecessaryConditions cond = necessary_conditions(a);
  rep.pow2_ok = cond.pow2_ok;
  rep.sum_ok = cond.sum_ok;
  rep.poly_identity = poly_identity_check(a).holds;
  return rep;
}

ConstructReport run_construct(const std::vector<GeometricBlock>& blocks) {
  const Assembly asmb = assemble_multiset(blocks);
  const RingContext ctx = build_context(asmb.multiset.modulus());
  ConstructReport rep;
  rep.modulus = ctx.n;
  rep.phi = ctx.phi;
  rep.r = ctx.r();
  for (const auto& blk : blocks) rep.blocks.push_back(summarize(blk));
  rep.multiset = entries_of(asmb.multiset);
  rep.k = asmb.multiset.cardinality();
  rep.s_plus = asmb.s_plus;
  rep.s_minus = asmb.s_minus;
  rep.deviation_residue = asmb.deviation_residue;
  rep.sum_ok = asmb.sum_ok;
  rep.predicted_profile = predicted_profile(blocks).counts;
  const DistributionProfile actual = subset_sum_distribution(asmb.multiset);
  rep.profile = actual.counts;
  rep.uniform = is_equidistributed(actual);
  rep.prediction_matches = rep.predicted_profile == rep.profile;
  return rep;
}

DecomposeReport run_decompose(const ResidueMultiset& a, const RingContext& ctx) {
  DecomposeReport rep;
  rep.modulus = ctx.n;
  rep.phi = ctx.phi;
  rep.r = ctx.r();
  rep.multiset = entries_of(a);
  const GuaranteeReport guarantee = decomposition_guarantee(ctx, a);
  rep.guarantee_applicable = guarantee.applicable;
  rep.guarantee_branch = to_string(guarantee.branch);
  const DecomposeOutcome out = decompose(a, ctx);
  rep.decomposed = out.ok();
  if (out.decomposition) {
    for (const auto& blk : out.decomposition->blocks) rep.blocks.push_back(summarize(blk));
  } else if (out.obstruction) {
    rep.obstruction_orbit = out.obstruction->orbit;
    rep.obstruction_reason = out.obstruction->reason;
  }
  return rep;
}

std::string to_json(const AnalyzeReport& rep) {
  Json j;
  j["command"] = "analyze";
  j["modulus"] = rep.modulus;
  j["phi"] = rep.phi;
  if (rep.r)
    j["r"] = *rep.r;
  else
    j["r"] = nullptr;
  j["multiset"] = multiset_json(rep.multiset);
  j["k"] = rep.k;
  j["profile"] = profile_json(rep.profile);
  j["uniform"] = rep.uniform;
  Json cond;
  cond["pow2"] = rep.pow2_ok;
  cond["sum"] = rep.sum_ok;
  cond["poly_identity"] = rep.poly_identity;
  j["conditions"] = std::move(cond);
  return j.dump(2);
}

AnalyzeReport parse_analyze_report(const std::string& text) {
  const Json j = parse_json(text);
  return guarded([&] {
    AnalyzeReport rep;
    rep.modulus = j.at("modulus").get<std::uint64_t>();
    rep.phi = j.at("phi").get<std::uint64_t>();
    if (!j.at("r").is_null()) rep.r = j.at("r").get<std::uint64_t>();
    rep.multiset = multiset_from_json(j.at("multiset"));
    rep.k = j.at("k").get<std::uint64_t>();
    rep.profile = profile_from_json(j.at("profile"));
    rep.uniform = j.at("uniform").get<bool>();
    rep.pow2_ok = j.at("conditions").at("pow2").get<bool>();
    rep.sum_ok = j.at("conditions").at("sum").get<bool>();
    rep.poly_identity = j.at("conditions").at("poly_identity").get<bool>();
    return rep;
  });
}

std::string to_json(const ConstructReport& rep) {
  Json j;
  j["command"] = "construct";
  j["modulus"] = rep.modulus;
  j["phi"] = rep.phi;
  j["r"] = rep.r;
  j["blocks"] = blocks_json(rep.blocks);
  j["multiset"] = multiset_json(rep.multiset);
  j["k"] = rep.k;
  j["s_plus"] = rep.s_plus.str();
  j["s_minus"] = rep.s_minus.str();
  j["deviation_residue"] = rep.deviation_residue;
  j["sum_ok"] = rep.sum_ok;
  j["predicted_profile"] = profile_json(rep.predicted_profile);
  j["profile"] = profile_json(rep.profile);
  j["uniform"] = rep.uniform;
  j["prediction_matches"] = rep.prediction_matches;
  return j.dump(2);
}

ConstructReport parse_construct_report(const std::string& text) {
  const Json j = parse_json(text);
  return guarded([&] {
    ConstructReport rep;
    rep.modulus = j.at("modulus").get<std::uint64_t>();
    rep.phi = j.at("phi").get<std::uint64_t>();
    rep.r = j.at("r").get<std::uint64_t>();
    rep.blocks = blocks_from_json(j.at("blocks"));
    rep.multiset = multiset_from_json(j.at("multiset"));
    rep.k = j.at("k").get<std::uint64_t>();
    rep.s_plus = BigInt(j.at("s_plus").get<std::string>());
    rep.s_minus = BigInt(j.at("s_minus").get<std::string>());
    rep.deviation_residue = j.at("deviation_residue").get<std::uint64_t>();
    rep.sum_ok = j.at("sum_ok").get<bool>();
    rep.predicted_profile = profile_from_json(j.at("predicted_profile"));
    rep.profile = profile_from_json(j.at("profile"));
    rep.uniform = j.at("uniform").get<bool>();
    rep.prediction_matches = j.at("prediction_matches").get<bool>();
    return rep;
  });
}

std::string to_json(const DecomposeReport& rep) {
  Json j;
  j["command"] = "decompose";
  j["modulus"] = rep.modulus;
  j["phi"] = rep.phi;
  j["r"] = rep.r;
  j["multiset"] = multiset_json(rep.multiset);
  Json g;
  g["applicable"] = rep.guarantee_applicable;
  g["branch"] = rep.guarantee_branch;
  j["guarantee"] = std::move(g);
  j["decomposed"] = rep.decomposed;
  if (rep.decomposed) {
    j["blocks"] = blocks_json(rep.blocks);
  } else {
    Json obs;
    obs["orbit"] = rep.obstruction_orbit;
    obs["reason"] = rep.obstruction_reason;
    j["obstruction"] = std::move(obs);
  }
  return j.dump(2);
}

DecomposeReport parse_decompose_report(const std::string& text) {
  const Json j = parse_json(text);
  return guarded([&] {
    DecomposeReport rep;
    rep.modulus = j.at("modulus").get<std::uint64_t>();
    rep.phi = j.at("phi").get<std::uint64_t>();
    rep.r = j.at("r").get<std::uint64_t>();
    rep.multiset = multiset_from_json(j.at("multiset"));
    rep.guarantee_applicable = j.at("guarantee").at("applicable").get<bool>();
    rep.guarantee_branch = j.at("guarantee").at("branch").get<std::string>();
    rep.decomposed = j.at("decomposed").get<bool>();
    if (rep.decomposed) {
      rep.blocks = blocks_from_json(j.at("blocks"));
    } else {
      rep.obstruction_orbit = j.at("obstruction").at("orbit").get<std::vector<std::uint64_t>>();
      rep.obstruction_reason = j.at("obstruction").at("reason").get<std::string>();
    }
    return rep;
  });
}

std::string to_json(const CountReport& rep) { return count_json(rep).dump(2); }

CountReport parse_count_report(const std::string& text) {
  const Json j = parse_json(text);
  return guarded([&] { return count_from_json(j); });
}

std::string to_json_array(const std::vector<CountReport>& reps) {
  Json arr = Json::array();
  for (const auto& rep : reps) arr.push_back(count_json(rep));
  return arr.dump(2);
}

std::string to_json(const VerifyReport& rep) {
  Json j;
  j["command"] = "verify";
  j["suite"] = rep.suite;
  j["seed"] = rep.seed;
  j["budget"] = rep.budget;
  Json checks = Json::array();
  for (const auto& c : rep.checks) {
    Json cj;
    cj["name"] = c.name;
    cj["pass"] = c.pass;
    cj["cases"] = c.cases;
    cj["failures"] = c.failures;
    cj["notes"] = c.notes;
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  j["pass"] = rep.pass;
  return j.dump(2);
}

VerifyReport parse_verify_report(const std::string& text) {
  const Json j = parse_json(text);
  return guarded([&] {
    VerifyReport rep;
    rep.suite = j.at("suite").get<std::string>();
    rep.seed = j.at("seed").get<std::uint64_t>();
    rep.budget = j.at("budget").get<std::uint64_t>();
    for (const auto& cj : j.at("checks")) {
      CheckResult c;
      c.name = cj.at("name").get<std::string>();
      c.pass = cj.at("pass").get<bool>();
      c.cases = cj.at("cases").get<std::uint64_t>();
      c.failures = cj.at("failures").get<std::uint64_t>();
      c.notes = cj.at("notes").get<std::vector<std::string>>();
      rep.checks.push_back(std::move(c));
    }
    rep.pass = j.at("pass").get<bool>();
    return rep;
  });
}

namespace {

std::string profile_line(const std::vector<BigInt>& counts) {
  std::string out = "[";
  for (std::size_t i = 0; i < counts.size(); ++i) {
    if (i) out += ",";
    out += counts[i].str();
  }
  return out + "]";
}

std::string multiset_line(const MultisetEntries& entries) {
  std::string out = "{";
  bool first = true;
  for (const auto& [res, mult] : entries) {
    if (!first) out += ",";
    first = false;
    out += std::to_string(res);
    if (mult > 1) out += "^" + std::to_string(mult);
  }
  return out + "}";
}

std::string yesno(bool b) { return b ? "yes" : "no"; }

void block_lines(std::ostringstream& os, const std::vector<BlockSummary>& blocks) {
  for (const auto& b : blocks) {
    os << "  leader " << b.leader << "  signs " << b.signs << "  residues "
       << format_set(b.residues) << "  S+ " << b.s_plus.str() << "\n";
  }
}

}  // namespace

std::string render_text(const AnalyzeReport& rep) {
  std::ostringstream os;
  os << "modulus " << rep.modulus << "  phi " << rep.phi << "  r ";
  if (rep.r)
    os << *rep.r;
  else
    os << "undefined (even modulus)";
  os << "\n";
  os << "multiset " << multiset_line(rep.multiset) << "  k=" << rep.k << "\n";
  os << "profile " << profile_line(rep.profile) << "\n";
  os << "equidistributed: " << yesno(rep.uniform) << "\n";
  os << "conditions: 2^k=1 (mod n): " << yesno(rep.pow2_ok) << "; sum=0 (mod n): "
     << yesno(rep.sum_ok) << "; product polynomial = 1: " << yesno(rep.poly_identity) << "\n";
  return os.str();
}

std::string render_text(const ConstructReport& rep) {
  std::ostringstream os;
  os << "modulus " << rep.modulus << "  phi " << rep.phi << "  r " << rep.r << "\n";
  os << "blocks:\n";
  block_lines(os, rep.blocks);
  os << "multiset " << multiset_line(rep.multiset) << "  k=" << rep.k << "\n";
  os << "S+ = " << rep.s_plus.str() << ", S- = " << rep.s_minus.str()
     << ", deviation residue = " << rep.deviation_residue
     << " (S+ mod q; the signed negative sum is congruent to S+)\n";
  os << "element sum = 0 (mod q): " << yesno(rep.sum_ok) << "\n";
  os << "predicted " << profile_line(rep.predicted_profile) << "\n";
  os << "actual    " << profile_line(rep.profile) << "\n";
  os << "equidistributed: " << yesno(rep.uniform)
     << "; prediction matches: " << yesno(rep.prediction_matches) << "\n";
  return os.str();
}

std::string render_text(const DecomposeReport& rep) {
  std::ostringstream os;
  os << "modulus " << rep.modulus << "  phi " << rep.phi << "  r " << rep.r << "\n";
  os << "multiset " << multiset_line(rep.multiset) << "\n";
  os << "guarantee: " << yesno(rep.guarantee_applicable) << " (branch " << rep.guarantee_branch
     << ")\n";
  if (rep.decomposed) {
    os << "decomposed into " << rep.blocks.size() << " block(s):\n";
    block_lines(os, rep.blocks);
  } else {
    os << "no decomposition: " << rep.obstruction_reason << "\n";
    os << "obstructing orbit " << format_set(rep.obstruction_orbit) << "\n";
  }
  return os.str();
}

std::string render_text(const CountReport& rep) {
  std::ostringstream os;
  os << "q=" << rep.modulus << "  phi " << rep.phi << "  r " << rep.r << " ("
     << to_string(rep.parity) << ")\n";
  os << "  formula        " << rep.formula_value.str() << "\n";
  os << "  configurations " << rep.configuration_count.str() << "\n";
  os << "  distinct sets  " << rep.distinct_set_count.str() << "\n";
  os << "  brute force    "
     << (rep.brute_force_count ? rep.brute_force_count->str() : rep.brute_force_note) << "\n";
  os << "  flags: formula=configurations: " << yesno(rep.flags.formula_vs_config)
     << "; formula=sets: " << yesno(rep.flags.formula_vs_sets) << "; sets=brute: "
     << (rep.flags.sets_vs_bruteforce ? yesno(*rep.flags.sets_vs_bruteforce) : "n/a") << "\n";
  return os.str();
}

std::string render_text(const VerifyReport& rep) {
  std::ostringstream os;
  os << "suite " << rep.suite << "  seed " << rep.seed << "  budget " << rep.budget << "\n";
  for (const auto& c : rep.checks) {
    os << (c.pass ? "  PASS " : "  FAIL ") << c.name << "  (" << c.cases << " cases, "
       << c.failures << " failures)\n";
    for (const auto& n : c.notes) os << "        " << n << "\n";
  }
  os << (rep.pass ? "all checks passed" : "CHECKS FAILED") << "\n";
  return os.str();
}

}  // namespace eqdist
