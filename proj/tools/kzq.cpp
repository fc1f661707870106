// kzq: lower K-theory invariants of finite groups and their amalgams.
#include <CLI11.hpp>

#include <iostream>

#include "acceptance.hpp"
#include "kzq/error.hpp"
#include "kzq/fixtures.hpp"
#include "kzq/presentation.hpp"
#include "kzq/report.hpp"

using namespace kzq;

namespace {

struct Globals {
  std::vector<std::string> schur;
  std::uint64_t seed = 0;
  std::string format = "text";
};

ReportContext context(const Globals& g, const SchurProvider& p, std::string command,
                      std::vector<std::pair<std::string, std::string>> input) {
  return {std::move(command), std::move(input), g.seed, p.files(), p.provenance()};
}

void emit(const Globals& g, const Json& j, const std::string& text) {
  if (g.format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

int cmd_invariants(const Globals& g, const std::string& spec) {
  FiniteGroup grp = group_from_spec(spec);
  SchurProvider p = load_schur(g.schur);
  auto d = analyze(grp, p, g.seed);
  KTheoryReport r = invariants(*d);
  auto ctx = context(g, p, "invariants", {{"group", spec}});
  emit(g, invariants_json(r, ctx), invariants_text(r, ctx));
  return r.agreement ? 0 : 1;
}

int cmd_amalgam(const Globals& g, const std::string& h, const std::string& k1, const std::string& e1,
                const std::string& k2, const std::string& e2) {
  SchurProvider p = load_schur(g.schur);
  Analyzer an(p, g.seed);
  auto H = an.get(group_from_spec(h));
  auto K1 = an.get(group_from_spec(k1));
  auto K2 = an.get(group_from_spec(k2));
  GroupHom f1 = parse_hom(e1, H->group, K1->group);
  GroupHom f2 = parse_hom(e2, H->group, K2->group);
  ImageResult im = amalgam_image({H, K1, K2, f1, f2});
  KTheoryReport rh = invariants(*H), r1 = invariants(*K1), r2 = invariants(*K2);
  std::string label = K1->group.label() + " *_" + H->group.label() + " " + K2->group.label();
  auto ctx = context(g, p, "amalgam", {{"h", h}, {"k1", k1}, {"embed1", e1}, {"k2", k2}, {"embed2", e2}});
  emit(g, amalgam_json(label, rh, r1, r2, im, ctx), amalgam_text(label, rh, r1, r2, im, ctx));
  return rh.agreement && r1.agreement && r2.agreement && im.agreement ? 0 : 1;
}

int cmd_vc1(const Globals& g, const std::string& h, const std::string& aut) {
  SchurProvider p = load_schur(g.schur);
  auto H = analyze(group_from_spec(h), p, g.seed);
  GroupHom t = parse_hom(aut, H->group, H->group);
  Vc1Result v = vc1_k0q(H, t);
  KTheoryReport rh = invariants(*H);
  std::string label = H->group.label() + " x| Z";
  auto ctx = context(g, p, "vc1", {{"h", h}, {"aut", aut}});
  emit(g, vc1_json(label, rh, v, ctx), vc1_text(label, rh, v, ctx));
  return 0;
}

int cmd_corpus(const Globals& g, bool json) {
  acceptance::Options opt;
  opt.seed = g.seed;
  opt.schur_files = g.schur;
  auto results = acceptance::run_all(opt);
  if (json || g.format == "json") {
    Json arr = Json::array();
    for (const auto& r : results) {
      Json j;
      j["id"] = r.id;
      j["title"] = r.title;
      j["status"] = acceptance::status_name(r.status);
      j["detail"] = r.detail;
      arr.push_back(j);
    }
    Json out;
    out["schema"] = 1;
    out["results"] = arr;
    out["summary"] = acceptance::summary(results);
    std::cout << out.dump(2) << "\n";
  } else {
    for (const auto& r : results) std::cout << acceptance::format_line(r) << "\n";
    std::cout << acceptance::summary(results) << "\n";
  }
  return acceptance::all_passed(results) ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lower algebraic K-theory of finite and virtually cyclic groups"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--schur-data", g.schur, "Schur index data file (repeatable)")->allow_extra_args(false);
  app.add_option("--seed", g.seed, "seed for the character table splitting")->capture_default_str();
  app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  std::string spec;
  auto* inv = app.add_subcommand("invariants", "Carter invariants and K_-1 of one group");
  inv->add_option("spec", spec, "name:<catalog>, pres:<presentation> or A x B")->required();

  std::string h, k1, k2, e1, e2;
  auto* am = app.add_subcommand("amalgam", "image of K~0 ZG -> K~0 QG for K1 *_H K2");
  am->set_help_flag("--help", "Print this help message and exit");
  am->add_option("--h", h)->required();
  am->add_option("--k1", k1)->required();
  am->add_option("--embed1", e1)->required();
  am->add_option("--k2", k2)->required();
  am->add_option("--embed2", e2)->required();

  std::string vh, aut;
  auto* vc = app.add_subcommand("vc1", "K_0 QG for G = H x| Z");
  vc->set_help_flag("--help", "Print this help message and exit");
  vc->add_option("--h", vh)->required();
  vc->add_option("--aut", aut)->required();

  bool json = false;
  auto* corpus = app.add_subcommand("corpus", "run the acceptance corpus");
  corpus->add_flag("--json", json, "machine-readable results");

  for (auto* sub : {inv, am, vc, corpus}) {
    sub->add_option("--schur-data", g.schur, "Schur index data file (repeatable)")->allow_extra_args(false);
    sub->add_option("--seed", g.seed);
    sub->add_option("--format", g.format)->check(CLI::IsMember({"json", "text"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*inv) return cmd_invariants(g, spec);
    if (*am) return cmd_amalgam(g, h, k1, e1, k2, e2);
    if (*vc) return cmd_vc1(g, vh, aut);
    if (*corpus) return cmd_corpus(g, json);
  } catch (const ParseError& e) {
    std::cerr << "error: ParseError at position " << e.position() << ": " << e.what() << "\n";
    return e.exit_code();
  } catch (const Error& e) {
    std::cerr << "error: " << error_code_name(e.code()) << ": " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
