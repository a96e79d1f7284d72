// Exit codes: 0 pass, 1 mathematical failure, 2 input error.
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "reslab/catalog.hpp"
#include "reslab/errors.hpp"
#include "reslab/resonance.hpp"
#include "reslab/serialize.hpp"
#include "reslab/verify.hpp"

using namespace reslab;
namespace fs = std::filesystem;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInput = 2;

// A path, or the name of a shipped fixture.
json load_document(const std::string& ref) {
  if (fs::exists(ref)) return read_json_file(ref);
  fs::path named = fixture_dir() / (ref + ".json");
  if (fs::exists(named)) return read_json_file(named.string());
  throw Error(ErrorCode::Parse, "no such file or fixture: '" + ref + "'");
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

json violations_json(const ValidationReport& r) {
  json arr = json::array();
  for (const auto& v : r.violations)
    arr.push_back({{"axiom", v.axiom}, {"degrees", v.degrees}, {"indices", v.indices}, {"detail", v.detail}});
  return arr;
}

json violations_json(const LieReport& r) {
  json arr = json::array();
  for (const auto& v : r.violations) arr.push_back({{"axiom", v.axiom}, {"indices", v.indices}, {"detail", v.detail}});
  return arr;
}

int cmd_validate(const std::string& path) {
  json doc = load_document(path);
  json report;
  bool ok = true;
  if (doc.contains("mats")) {
    Representation r = rep_from_json(doc);
    auto lie = validate_lie(r.lie);
    auto hom = validate_rep(r);
    ok = lie.ok() && hom.ok();
    report = {{"kind", "representation"}, {"lie_violations", violations_json(lie)}, {"rep_violations", violations_json(hom)}};
  } else if (doc.contains("bracket")) {
    auto lie = validate_lie(lie_from_json(doc));
    ok = lie.ok();
    report = {{"kind", "lie"}, {"violations", violations_json(lie)}};
  } else {
    CDGA a = cdga_from_json(doc);
    auto v = validate(a);
    ok = v.ok();
    report = {{"kind", "cdga"}, {"dims", a.dims()}, {"violations", violations_json(v)}};
    if (ok) report["betti"] = betti_numbers(a);
  }
  report["valid"] = ok;
  std::cout << dump(report);
  return ok ? kPass : kFail;
}

int cmd_resonance(const std::string& algebra, const std::string& rep, const std::string& connection, int degree,
                  std::size_t depth) {
  CDGA a = cdga_from_json(load_document(algebra));
  Representation theta = rep_from_json(load_document(rep));
  Connection om = connection_from_json(load_document(connection));
  require_shape(a, theta.lie, om);
  if (degree < 0 || degree > a.q()) throw Error(ErrorCode::DegreeOutOfRange, "degree beyond the truncation");
  if (!is_flat(a, theta.lie, om)) {
    std::cout << dump({{"point", to_json(om.coeffs)}, {"flat", false}, {"curvature", to_json(curvature(a, theta.lie, om))}});
    return kFail;
  }
  const std::size_t b = twisted_betti(a, theta, om, degree);
  std::cout << dump({{"point", to_json(om.coeffs)}, {"i", degree}, {"m", depth}, {"twisted_betti", b}, {"member", b >= depth}});
  return kPass;
}

int cmd_holonomy(const std::string& algebra) {
  std::cout << format_presentation(holonomy_presentation(cdga_from_json(load_document(algebra))));
  return kPass;
}

int cmd_construct(bool tensor, const std::string& left, const std::string& right, const std::string& out) {
  CDGA a = cdga_from_json(load_document(left));
  CDGA b = cdga_from_json(load_document(right));
  for (const auto* x : {&a, &b}) {
    auto v = validate(*x);
    if (!v.ok()) {
      std::cerr << "input violates " << v.violations.front().axiom << ": " << v.violations.front().detail << "\n";
      return kFail;
    }
  }
  CDGA c = tensor ? tensor_product(a, b).product : wedge_sum(a, b).wedge;
  emit(dump(to_json(c)), out);
  return kPass;
}

int cmd_verify(const std::string& suite, const SamplePlan& plan, const std::string& out, bool pretty) {
  auto ids = expand_selector(suite);
  FixtureSet fx = load_fixture_set(fixture_dir());
  auto reports = run_suite(ids, fx, plan);
  bool pass = true;
  std::string text;
  json arr = json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass();
    if (pretty) {
      text += render_text(r);
    } else {
      arr.push_back(to_json(r));
    }
  }
  if (pretty) {
    text += std::string("suite: ") + (pass ? "PASS" : "FAIL") + "\n";
  } else {
    text = dump({{"seed", plan.seed}, {"height", plan.height}, {"count", plan.count}, {"reports", arr}, {"pass", pass}});
  }
  emit(text, out);
  if (!pass) {
    for (const auto& r : reports)
      if (!r.pass()) std::cerr << "failed: " << r.theorem << "\n";
  }
  return pass ? kPass : kFail;
}

int cmd_catalog(const std::string& write_dir) {
  if (!write_dir.empty()) {
    write_fixture_files(write_dir);
    return kPass;
  }
  FixtureSet fx = builtin_fixture_set();
  json j{{"fixture_dir", fixture_dir().string()},
         {"algebras", base_fixture_names()},
         {"lie", lie_fixture_names()},
         {"products", json::array()},
         {"wedges", json::array()},
         {"checks", suite_ids()}};
  for (const auto& p : fx.products) j["products"].push_back(p.name);
  for (const auto& w : fx.wedges) j["wedges"].push_back(w.name);
  std::cout << dump(j);
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Resonance varieties of CDGAs and flat connections"};
  app.require_subcommand(1, 1);

  std::string path, algebra, rep, connection, left, right, out, suite, write_dir;
  int degree = 0;
  std::size_t depth = 1;
  bool pretty = false;
  SamplePlan plan;

  auto* validate_cmd = app.add_subcommand("validate", "check the axioms of a CDGA, Lie algebra or representation file");
  validate_cmd->add_option("path", path, "file or fixture name")->required();

  auto* res_cmd = app.add_subcommand("resonance", "twisted Betti number and resonance membership at a connection");
  res_cmd->add_option("--algebra", algebra, "CDGA file or fixture name")->required();
  res_cmd->add_option("--rep", rep, "representation file or fixture name")->required();
  res_cmd->add_option("--connection", connection, "connection file")->required();
  res_cmd->add_option("-i,--degree", degree, "cohomological degree")->required();
  res_cmd->add_option("-m,--depth", depth, "depth m")->check(CLI::PositiveNumber);

  auto* hol_cmd = app.add_subcommand("holonomy", "print the holonomy Lie algebra presentation");
  hol_cmd->add_option("algebra", algebra, "CDGA file or fixture name")->required();

  auto* tensor_cmd = app.add_subcommand("tensor", "tensor product of two CDGAs");
  auto* wedge_cmd = app.add_subcommand("wedge", "wedge sum of two CDGAs");
  for (auto* c : {tensor_cmd, wedge_cmd}) {
    c->add_option("left", left, "left CDGA")->required();
    c->add_option("right", right, "right CDGA")->required();
    c->add_option("--out", out, "output path (default: standard output)");
  }

  auto* verify_cmd = app.add_subcommand("verify", "run the theorem verification suite");
  verify_cmd->add_option("--suite", suite, "comma list of checks, 'examples' or 'all'")->default_val("all");
  verify_cmd->add_option("--seed", plan.seed, "sampling seed")->default_val(kDefaultSeed);
  verify_cmd->add_option("--height", plan.height, "height bound of sampled rationals")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--count", plan.count, "points per family")->check(CLI::PositiveNumber);
  verify_cmd->add_option("--out", out, "write the report here");
  verify_cmd->add_flag("--pretty", pretty, "plain-text report");

  auto* catalog_cmd = app.add_subcommand("catalog", "list shipped fixtures or write them out");
  catalog_cmd->add_option("--write", write_dir, "directory to write fixture files into");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*validate_cmd) return cmd_validate(path);
    if (*res_cmd) return cmd_resonance(algebra, rep, connection, degree, depth);
    if (*hol_cmd) return cmd_holonomy(algebra);
    if (*tensor_cmd) return cmd_construct(true, left, right, out);
    if (*wedge_cmd) return cmd_construct(false, left, right, out);
    if (*verify_cmd) {
      plan.nonflat = plan.count;
      return cmd_verify(suite, plan, out, pretty);
    }
    if (*catalog_cmd) return cmd_catalog(write_dir);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::NotFlat:
      case ErrorCode::BrokenComplex:
      case ErrorCode::ClassificationFailure:
        return kFail;
      default:
        return kInput;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
