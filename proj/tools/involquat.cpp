// involquat command-line front end. Reads an instance descriptor (JSON) from
// a file or standard input and writes a JSON result to standard output.
// Exit status: 0 decided / success, 2 bad input or failed precondition,
// 1 internal check failure.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "involquat/harness/harness.hpp"
#include "involquat/harness/json_io.hpp"
#include "involquat/involquat.hpp"

namespace {

using namespace involquat;
using io::json;

constexpr int kOk = 0;
constexpr int kInternal = 1;
constexpr int kBadInput = 2;

struct Options {
  std::string input;
  std::string element;
  std::string target;  // find-quat --for
  bool split = false;
  bool bases = false;
  std::string kind = "metabolic";
  std::optional<std::uint64_t> trials;
  std::optional<std::uint64_t> seed;
  bool no_oracle = false;
};

json read_descriptor(const std::string& path) {
  std::string text;
  if (path.empty() || path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::Malformed, "cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  try {
    json j = json::parse(text);
    if (!j.is_object()) fail(ErrorCode::Malformed, "descriptor must be a JSON object");
    if (j.contains("schema") && j.at("schema") != io::kSchema)
      fail(ErrorCode::Malformed, "unsupported schema " + j.at("schema").dump());
    return j;
  } catch (const json::parse_error& e) {
    fail(ErrorCode::Malformed, std::string("invalid JSON: ") + e.what());
  }
}

/// Named element: --element, else the first of `preferred` present, else the
/// only element.
const json& pick_element(const json& desc, const std::string& override_name, std::vector<std::string> preferred,
                         std::string& chosen) {
  const json& elements = io::member(desc, "elements");
  if (!elements.is_object() || elements.empty()) fail(ErrorCode::Malformed, "\"elements\" must be a non-empty object");
  if (!override_name.empty()) preferred = {override_name};
  for (const auto& name : preferred)
    if (elements.contains(name)) {
      chosen = name;
      return elements.at(name);
    }
  if (override_name.empty() && elements.size() == 1) {
    chosen = elements.begin().key();
    return elements.begin().value();
  }
  fail(ErrorCode::Malformed, "no element named " + preferred.front());
}

template <FieldScalar K>
std::optional<K> lambda_of(const FieldOf<K>& field, const json& desc) {
  if (!desc.contains("lambda")) return std::nullopt;
  return io::parse_scalar(field, desc.at("lambda"));
}

template <FieldScalar K>
json classify_involution_task(const InvolutionAlgebra<K>& alg, const Options& opt) {
  json out{{"class", io::involution_class_to_json(alg.classification())},
           {"half_unit_exists", find_half_unit(alg).has_value()}};
  json spaces = json::object();
  for (auto which : {SubspaceKind::sym, SubspaceKind::symd, SubspaceKind::alt}) {
    auto s = io::subspace_to_json(compute_subspace(alg, which));
    if (!opt.bases) s.erase("basis");
    spaces[std::string(to_string(which))] = std::move(s);
  }
  out["subspaces"] = std::move(spaces);
  return out;
}

template <FieldScalar K>
json find_quat_element(const InvolutionAlgebra<K>& alg, const json& desc, const Options& opt) {
  std::string name;
  const auto u = io::parse_matrix<K>(alg.field(), pick_element(desc, opt.element, {"u"}, name), alg.n());
  const K lambda = resolve_lambda(u, lambda_of<K>(alg.field(), desc));
  json out{{"element", name}, {"lambda", io::scalar_to_json(lambda)}};
  QuatOutcome<K> result;
  if (opt.split) {
    out["theorem"] = "split";
    result = split_quaternion_containing(u, lambda);
  } else if (!alg.char2_orthogonal()) {
    out["theorem"] = "skew";
    result = invariant_quat_for_skew_element(alg, u, lambda);
  } else if (in_alt(alg, u)) {
    out["theorem"] = "alt";
    result = invariant_quat_for_alt_element(alg, u, lambda);
  } else {
    out["theorem"] = "symmetric-char2";
    result = invariant_quat_for_symmetric_char2(alg, u, lambda);
  }
  out.update(io::outcome_to_json(result));
  return out;
}

template <FieldScalar K>
json find_quat_idempotent(const InvolutionAlgebra<K>& alg, const json& desc, const Options& opt) {
  std::string name;
  const auto e = io::parse_matrix<K>(alg.field(), pick_element(desc, opt.element, {"e"}, name), alg.n());
  json out{{"element", name}};
  out.update(io::outcome_to_json(invariant_quat_for_metabolic(alg, e)));
  return out;
}

template <FieldScalar K>
json oracle_task(const InvolutionAlgebra<K>& alg, const json& desc, const Options& opt) {
  if constexpr (!std::is_same_v<K, Fq>) {
    fail(ErrorCode::FieldTooLarge, "oracle supports GF(2) only");
  } else {
    std::string name;
    const auto x = io::parse_matrix<K>(alg.field(), pick_element(desc, opt.element, {"required", "e", "u"}, name),
                                       alg.n());
    const auto r = harness::brute_force_quat_oracle(alg, x);
    json out{{"element", name},
             {"candidates", r.candidates},
             {"closed_spans", r.closed_spans},
             {"decision", r.algebra ? "found" : "none"}};
    if (r.algebra) out["algebra"] = io::quaternion_to_json(*r.algebra);
    return out;
  }
}

template <FieldScalar K>
json run_algebra_task(const std::string& task, const FieldOf<K>& field, const json& desc, const Options& opt) {
  const auto alg = io::parse_algebra<K>(field, io::member(desc, "algebra"));
  json out;
  if (task == "classify-involution") {
    out = classify_involution_task(alg, opt);
  } else if (task == "classify-idempotent") {
    std::string name;
    const auto e = io::parse_matrix<K>(field, pick_element(desc, opt.element, {"e"}, name), alg.n());
    out = {{"element", name}, {"report", io::idempotent_report_to_json(classify_idempotent(alg, e))}};
  } else if (task == "find-quat") {
    out = opt.target == "idempotent" ? find_quat_idempotent(alg, desc, opt) : find_quat_element(alg, desc, opt);
  } else {
    out = oracle_task(alg, desc, opt);
  }
  out["algebra"] = io::algebra_to_json(alg);
  return out;
}

json dispatch(const std::string& task, const Options& opt, int& status) {
  if (task == "verify-examples") {
    const auto r = harness::verify_worked_examples();
    if (!r.all_pass()) status = kInternal;
    return io::fixture_report_to_json(r);
  }
  if (task == "fuzz") {
    harness::FuzzOptions fo;
    const auto kind = harness::parse_fuzz_kind(opt.kind);
    if (!kind) fail(ErrorCode::Malformed, "unknown fuzz kind " + opt.kind);
    fo.kind = *kind;
    std::optional<json> desc;
    if (!opt.input.empty()) desc = read_descriptor(opt.input);
    fo.trials = opt.trials ? *opt.trials : desc && desc->contains("trials") ? desc->at("trials").get<std::uint64_t>() : 1000;
    fo.seed = opt.seed ? *opt.seed : desc && desc->contains("seed") ? desc->at("seed").get<std::uint64_t>() : 1;
    fo.oracle = !opt.no_oracle;
    const auto r = harness::run_fuzz(fo);
    if (r.violations() != 0) status = kInternal;
    return io::fuzz_report_to_json(r);
  }
  const json desc = read_descriptor(opt.input);
  const auto field = io::parse_field(io::member(io::member(desc, "algebra"), "field"));
  if (const auto* ff = std::get_if<const FiniteField*>(&field)) return run_algebra_task<Fq>(task, **ff, desc, opt);
  return run_algebra_task<Rational>(task, **std::get_if<const RationalField*>(&field), desc, opt);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Split and involution-invariant quaternion subalgebras of matrix algebras with involution"};
  app.require_subcommand(1, 1);
  Options opt;
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent the JSON output");

  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", opt.input, "descriptor file (default: standard input)");
  };
  auto add_element = [&](CLI::App* sub) { sub->add_option("--element", opt.element, "name of the element to use"); };

  auto* ci = app.add_subcommand("classify-involution", "kind, type and Sym/Symd/Alt dimensions");
  add_input(ci);
  ci->add_flag("--bases", opt.bases, "include subspace bases");

  auto* cid = app.add_subcommand("classify-idempotent", "plain / metabolic / hyperbolic");
  add_input(cid);
  add_element(cid);

  auto* fq = app.add_subcommand("find-quat", "decide and construct a quaternion subalgebra containing an element");
  add_input(fq);
  add_element(fq);
  fq->add_option("--for", opt.target, "idempotent or element")
      ->required()
      ->check(CLI::IsMember({"idempotent", "element"}));
  fq->add_flag("--split", opt.split, "ignore the involution (element only)");

  app.add_subcommand("verify-examples", "re-check the two worked examples");

  auto* fz = app.add_subcommand("fuzz", "property suite over generated instances");
  fz->add_option("--kind", opt.kind, "square-central, metabolic, hyperbolic, skew, symmetric or alt-shift");
  fz->add_option("--trials", opt.trials, "trials per cell (default 1000)");
  fz->add_option("--seed", opt.seed, "64-bit seed (default 1)");
  fz->add_flag("--no-oracle", opt.no_oracle, "skip the GF(2) oracle cross-checks");
  fz->add_option("--input", opt.input, "optional descriptor supplying seed and trials");

  auto* orc = app.add_subcommand("oracle", "exhaustive search over GF(2), n <= 4");
  add_input(orc);
  add_element(orc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  const std::string task = app.get_subcommands().front()->get_name();
  int status = kOk;
  json out = io::document();
  out["task"] = task;
  try {
    out.update(dispatch(task, opt, status));
  } catch (const Error& e) {
    status = e.code() == ErrorCode::InternalCheckFailed ? kInternal : kBadInput;
    out["error"] = {{"code", to_string(e.code())}, {"detail", e.detail()}};
    if (e.code() == ErrorCode::PreconditionViolated) out["decision"] = "precondition-failed";
    std::cerr << "involquat: " << to_string(e.code()) << ": " << e.detail() << "\n";
  } catch (const json::exception& e) {
    status = kBadInput;
    out["error"] = {{"code", "Malformed"}, {"detail", e.what()}};
    std::cerr << "involquat: Malformed: " << e.what() << "\n";
  }
  std::cout << out.dump(pretty ? 2 : -1) << "\n";
  return status;
}
