#include "acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include "kzq/error.hpp"
#include "kzq/fixtures.hpp"
#include "kzq/ktheory.hpp"
#include "kzq/presentation.hpp"
#include "oracle.hpp"

namespace kzq::acceptance {

namespace {

const AbType kZ2{0, {Int(2)}};

struct Context {
  explicit Context(const Options& o) : opt(o), provider(load_schur(o.schur_files)), an(provider, o.seed) {}

  Options opt;
  SchurProvider provider;
  Analyzer an;
  std::map<std::string, bool> resolvable;

  // nullptr when the Schur data does not cover the group.
  std::shared_ptr<const GroupData> get(const std::string& name) {
    auto it = resolvable.find(name);
    if (it != resolvable.end() && !it->second) return nullptr;
    try {
      auto d = an.get(catalog(name));
      resolvable[name] = true;
      return d;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::UnknownSchurIndex) throw;
      resolvable[name] = false;
      return nullptr;
    }
  }

  std::vector<std::string> corpus_candidates() const {
    std::vector<std::string> out;
    for (int n = 1; n <= 32; ++n) out.push_back("C" + std::to_string(n));
    for (int n = 4; n <= 32; n += 2) out.push_back("D" + std::to_string(n));
    for (const char* s : {"S3", "S4", "Q8", "Q16", "Q32", "QD16", "QD32", "C2xC2", "C4xC2", "C2xC2xC2",
                          "Q8xC2", "D8xC2", "C3xC3", "S3xC2", "Q16xC2"})
      out.push_back(s);
    for (const auto& n : catalog_data_names()) out.push_back(n);
    return out;
  }

  std::vector<std::string> required() const {
    std::vector<std::string> out{"S3", "S4"};
    for (int n = 1; n <= 12; ++n) out.push_back("C" + std::to_string(n));
    for (int n = 6; n <= 16; n += 2) out.push_back("D" + std::to_string(n));
    return out;
  }

  struct Amalgam {
    std::string h, k1, k2, e1, e2;
    std::string label() const { return k1 + " *_" + h + " " + k2; }
  };

  std::vector<Amalgam> amalgams() const {
    auto es = load_embeddings(data_dir() / "embeddings.dat");
    std::vector<Amalgam> out;
    for (std::size_t i = 0; i < es.size(); ++i)
      for (std::size_t j = i; j < es.size(); ++j)
        if (es[i].h == es[j].h) out.push_back({es[i].h, es[i].k, es[j].k, es[i].hom, es[j].hom});
    return out;
  }

  // nullopt when a group is not covered by the Schur data.
  std::optional<ImageResult> image(const Amalgam& a) {
    auto h = get(a.h), k1 = get(a.k1), k2 = get(a.k2);
    if (!h || !k1 || !k2) return std::nullopt;
    return amalgam_image({h, k1, k2, parse_hom(a.e1, h->group, k1->group), parse_hom(a.e2, h->group, k2->group)});
  }
};

struct Outcome {
  Status status = Status::Pass;
  std::vector<std::string> notes;
  void fail(const std::string& s) {
    status = Status::Fail;
    notes.push_back(s);
  }
  void note(const std::string& s) { notes.push_back(s); }
  bool check(bool ok, const std::string& what) {
    if (!ok) fail(what);
    return ok;
  }
};

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(3);
  o << s << "s";
  return o.str();
}

void headline(Context& ctx, Outcome& out) {
  auto t0 = std::chrono::steady_clock::now();
  auto im = ctx.image({"Q16", "QD32", "QD32", "r=a^2;s=a*b", "r=a^2;s=a*b"});
  double dt = since(t0);
  if (!out.check(im.has_value(), "Schur data for Q16/QD32 missing")) return;
  out.check(im->image == kZ2, "image " + im->image.str() + ", expected Z/2");
  out.check(im->agreement, "routes disagree");
  out.check(dt < 60, "took " + fmt_seconds(dt));
  out.note("image " + im->image.str() + " in " + fmt_seconds(dt));
}

void carter_values(Context& ctx, Outcome& out) {
  struct Want {
    const char* name;
    long r;
    unsigned s;
    AbType k;
    bool gated;
  };
  const Want wants[] = {{"Q16", 0, 1, kZ2, false},
                        {"QD32", 0, 0, AbType{}, false},
                        {"Q16xC2", 0, 2, AbType{0, {Int(2), Int(2)}}, true}};
  for (const auto& w : wants) {
    auto d = ctx.get(w.name);
    if (!d) {
      if (w.gated)
        out.note(std::string(w.name) + " SKIP (no Schur data)");
      else
        out.fail(std::string(w.name) + " has no Schur data");
      continue;
    }
    auto r = carter(*d);
    bool ok = out.check(r.carter_rank == w.r && r.s == w.s && r.k_minus_1 == w.k,
                        std::string(w.name) + " gave " + r.k_minus_1.str());
    if (ok) out.note(std::string(w.name) + " " + r.k_minus_1.str());
  }
}

void cross_validation(Context& ctx, Outcome& out) {
  std::size_t n = 0;
  for (const auto& name : ctx.corpus_candidates()) {
    auto d = ctx.get(name);
    if (!d) continue;
    ++n;
    auto r = invariants(*d);
    out.check(r.sequence_exact, name + ": sequence not exact");
    out.check(r.agreement, name + ": carter " + r.k_minus_1.str() + " vs SC " + r.k_minus_1_sc.str());
  }
  for (const auto& name : ctx.required())
    out.check(ctx.resolvable[name], name + " missing from the corpus");
  out.note(std::to_string(n) + " groups");
}

void class_tables(Context&, Outcome& out) {
  auto from_pres = [](const std::string& name) {
    return todd_coxeter(parse_presentation(catalog_presentation(name)));
  };
  FiniteGroup q16 = from_pres("Q16");
  std::multiset<std::pair<unsigned, std::size_t>> got, want{{1, 1}, {2, 1}, {4, 2}, {4, 4}, {4, 4}, {8, 2}, {8, 2}};
  for (std::size_t c = 0; c < q16.classes().count(); ++c) got.insert({q16.classes().order(c), q16.classes().size(c)});
  out.check(q16.classes().count() == 7 && got == want, "Q16 classes differ");
  FiniteGroup qd32 = from_pres("QD32");
  std::multiset<std::size_t> sizes, want_sizes{1, 1, 8, 2, 8, 2, 2, 2, 2, 2, 2};
  for (std::size_t c = 0; c < qd32.classes().count(); ++c) sizes.insert(qd32.classes().size(c));
  out.check(qd32.classes().count() == 11 && sizes == want_sizes, "QD32 class sizes differ");
  out.note("Q16 " + std::to_string(q16.classes().count()) + " classes, QD32 " +
           std::to_string(qd32.classes().count()) + " classes");
}

void rank_formulas(Context& ctx, Outcome& out) {
  std::size_t n = 0;
  for (const auto& name : ctx.corpus_candidates()) {
    auto d = ctx.get(name);
    if (!d) continue;
    ++n;
    const FiniteGroup& g = d->group;
    auto r = invariants(*d);
    long rq = static_cast<long>(oracle::galois_orbit_count(g, FieldTag::rationals()));
    long sum = 0;
    for (unsigned p : prime_divisors(g.order())) {
      long qp = static_cast<long>(oracle::galois_orbit_count(g, FieldTag::padic(p)));
      long fp = static_cast<long>(oracle::galois_orbit_count(g, FieldTag::finite(p)));
      out.check(r.r_qp[p] == static_cast<std::size_t>(qp) && r.r_fp[p] == static_cast<std::size_t>(fp),
                name + ": local counts at " + std::to_string(p));
      sum += qp - fp;
    }
    out.check(static_cast<long>(r.r_q) == rq, name + ": r_Q");
    out.check(static_cast<long>(r.sc_rank) == sum, name + ": SC rank " + std::to_string(r.sc_rank) +
                                                       " vs " + std::to_string(sum));
    out.check(r.carter_rank == 1 - rq + sum, name + ": carter rank");
    if ((g.order() & (g.order() - 1)) == 0) out.check(r.carter_rank == 0, name + ": 2-group with r != 0");
  }
  out.note(std::to_string(n) + " groups");
}

void fs_indicator_check(Context& ctx, Outcome& out) {
  auto d = ctx.get("Q16");
  if (!out.check(d != nullptr, "Q16 has no Schur data")) return;
  const auto& t = d->table;
  const auto& cd = t.classes();
  std::size_t z = cd.count();
  for (std::size_t c = 0; c < cd.count(); ++c)
    if (cd.order(c) == 2) z = c;
  std::size_t faithful = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.degree(i) != 2 || t.value(i, z) != Cyclotomic(-2L)) continue;
    ++faithful;
    out.check(fs_indicator(t, i) == -1, "indicator of a faithful character is not -1");
  }
  out.check(faithful == 2, "expected two faithful degree-2 characters");
  for (const auto& irr : d->irrs) {
    if (irr.fs != -1) continue;
    auto listed = ctx.provider.lookup(d->fingerprint, irr.fingerprint);
    out.check(listed.count(0) && listed.at(0) == 2 && irr.schur.m_infinity == 2, "m_inf datum is not 2");
    SchurProvider bad;
    bad.add(d->fingerprint, irr.fingerprint, 0, 1);
    bool conflict = false;
    try {
      rational_irreducibles(t, bad);
    } catch (const Error& e) {
      conflict = e.code() == ErrorCode::DataConflict;
    }
    out.check(conflict, "m_inf = 1 did not raise DataConflict");
  }
  out.note(std::to_string(faithful) + " faithful characters, indicator -1");
}

void torsion_law(Context& ctx, Outcome& out) {
  std::size_t n = 0, zero_s = 0;
  for (const auto& a : ctx.amalgams()) {
    auto im = ctx.image(a);
    if (!im) continue;
    ++n;
    bool elem2 = im->image.rank == 0 &&
                 std::all_of(im->image.torsion.begin(), im->image.torsion.end(), [](const Int& d) { return d == 2; });
    out.check(elem2, a.label() + ": image " + im->image.str());
    out.check(im->agreement, a.label() + ": routes disagree");
    unsigned s = carter(*ctx.get(a.h)).s + carter(*ctx.get(a.k1)).s + carter(*ctx.get(a.k2)).s;
    if (s == 0) {
      ++zero_s;
      out.check(im->image.is_zero(), a.label() + ": s = 0 but image " + im->image.str());
    }
  }
  out.check(n >= 20, "only " + std::to_string(n) + " amalgams");
  out.note(std::to_string(n) + " amalgams, " + std::to_string(zero_s) + " with s = 0");
}

void order32_summary(Context& ctx, Outcome& out) {
  for (const char* g : {"Q32", "Q16xC2", "SG(32,42)"})
    if (!ctx.get(g)) {
      out.status = Status::Skip;
      out.note(std::string("no Schur data for ") + g);
      return;
    }
  std::size_t z2 = 0, zero = 0;
  for (const auto& a : ctx.amalgams()) {
    if (a.h != "Q16") continue;
    auto in = [&](const char* k) { return a.k1 == k || a.k2 == k; };
    bool want_z2 = (a.k1 == "QD32" || a.k1 == "SG(32,42)") && (a.k2 == "QD32" || a.k2 == "SG(32,42)");
    bool want_zero = in("Q32") || in("Q16xC2");
    if (!want_z2 && !want_zero) continue;
    auto im = ctx.image(a);
    if (!out.check(im.has_value(), a.label() + ": no Schur data")) continue;
    if (want_z2) {
      ++z2;
      out.check(im->image == kZ2, a.label() + ": image " + im->image.str() + ", expected Z/2");
    } else {
      ++zero;
      out.check(im->image.is_zero(), a.label() + ": image " + im->image.str() + ", expected 0");
    }
  }
  out.check(z2 == 3, std::to_string(z2) + " of 3 Z/2 cases present");
  out.check(zero >= 2, "Q32 / Q16xC2 cases missing");
  out.note(std::to_string(z2) + " Z/2 cases, " + std::to_string(zero) + " trivial cases");
}

void oracles(Context& ctx, Outcome& out) {
  std::mt19937_64 rng(ctx.opt.seed);
  std::uniform_int_distribution<std::size_t> dim(1, 4);
  std::size_t bad = 0;
  for (int k = 0; k < 1000; ++k) {
    IntMat m = oracle::random_matrix(rng, dim(rng), dim(rng), -9, 9);
    auto f = snf(m).factors();
    for (auto& x : f) x = abs(x);
    auto h = hnf(m);
    bool ok = f == oracle::invariant_factors(m) && h.H == oracle::hnf(m) && h.H == m * h.U &&
              abs(det(h.U)) == 1;
    if (!ok && bad++ == 0) out.fail("matrix " + m.str());
  }
  out.check(bad == 0, std::to_string(bad) + " SNF/HNF mismatches");
  std::size_t tables = 0;
  for (const auto& name : ctx.corpus_candidates()) {
    std::string why;
    auto t = character_table(catalog(name), ctx.opt.seed);
    ++tables;
    out.check(oracle::orthogonal(t, &why), name + ": " + why);
  }
  std::size_t ladders = 0;
  for (int k = 0; k < 200; ++k) {
    auto l = oracle::random_ladder(rng);
    auto s = snake(l.top, l.bot, l.fA, l.fB, l.fC);
    std::string why;
    if (s.exact && oracle::six_term_consistent(s, l, &why)) ++ladders;
    else out.fail("ladder " + std::to_string(k) + " " + why);
  }
  out.note("1000 matrices, " + std::to_string(tables) + " tables, " + std::to_string(ladders) + " ladders");
}

void coset_enumeration(Context&, Outcome& out) {
  for (const char* name : {"Q16", "QD32", "Q32"}) {
    auto t0 = std::chrono::steady_clock::now();
    auto table = enumerate_cosets(parse_presentation(catalog_presentation(name)), 100000);
    double dt = since(t0);
    std::size_t want = std::string(name) == "Q16" ? 16 : 32;
    out.check(table.count() == want, std::string(name) + ": " + std::to_string(table.count()) + " cosets");
    out.check(dt < 1.0, std::string(name) + " took " + fmt_seconds(dt));
    out.note(std::string(name) + " " + std::to_string(table.count()) + " in " + fmt_seconds(dt));
  }
}

struct Criterion {
  int id;
  const char* title;
  void (*fn)(Context&, Outcome&);
};

const Criterion kCriteria[] = {
    {1, "QD32 *_Q16 QD32 image is Z/2", headline},
    {2, "Carter values", carter_values},
    {3, "K_-1 via SC agrees with Carter on the corpus", cross_validation},
    {4, "class tables from presentations", class_tables},
    {5, "rank formulas from orbit counts", rank_formulas},
    {6, "Frobenius-Schur indicator of Q16 and m_inf datum", fs_indicator_check},
    {7, "2-torsion law over corpus amalgams", torsion_law},
    {8, "order-32 overgroups of Q16", order32_summary},
    {9, "SNF/HNF, orthogonality and snake oracles", oracles},
    {10, "coset enumeration speed", coset_enumeration},
};

CriterionResult run_with(const Criterion& c, Context& ctx) {
  CriterionResult r;
  r.id = c.id;
  r.title = c.title;
  Outcome out;
  auto t0 = std::chrono::steady_clock::now();
  try {
    c.fn(ctx, out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  r.seconds = since(t0);
  r.status = out.status;
  for (std::size_t i = 0; i < out.notes.size(); ++i) r.detail += (i ? "; " : "") + out.notes[i];
  return r;
}

}  // namespace

const char* status_name(Status s) {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Fail: return "FAIL";
    case Status::Skip: return "SKIP";
  }
  return "?";
}

CriterionResult run(int id, const Options& opt) {
  Context ctx(opt);
  for (const auto& c : kCriteria)
    if (c.id == id) return run_with(c, ctx);
  throw Error(ErrorCode::InvalidArgument, "no criterion " + std::to_string(id));
}

std::vector<CriterionResult> run_all(const Options& opt) {
  Context ctx(opt);
  std::vector<CriterionResult> out;
  for (const auto& c : kCriteria) out.push_back(run_with(c, ctx));
  return out;
}

std::string format_line(const CriterionResult& r) {
  std::ostringstream s;
  s << status_name(r.status) << "  " << (r.id < 10 ? " " : "") << r.id << "  " << r.title;
  if (!r.detail.empty()) s << "  (" << r.detail << ")";
  return s.str();
}

std::string summary(const std::vector<CriterionResult>& rs) {
  std::size_t pass = 0, fail = 0, skip = 0;
  for (const auto& r : rs) {
    if (r.status == Status::Pass) ++pass;
    else if (r.status == Status::Fail) ++fail;
    else ++skip;
  }
  std::size_t run = pass + fail;
  std::size_t pct = run == 0 ? 100 : (100 * pass) / run;
  std::ostringstream s;
  s << (fail == 0 ? "PASS " : "FAIL ") << pct << "% (" << pass << " pass, " << fail << " fail, " << skip << " skip)";
  return s.str();
}

bool all_passed(const std::vector<CriterionResult>& rs) {
  return std::none_of(rs.begin(), rs.end(), [](const CriterionResult& r) { return r.status == Status::Fail; });
}

}  // namespace kzq::acceptance
