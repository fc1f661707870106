#include "kzq/rational_rep.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "kzq/error.hpp"

namespace kzq {

std::string FieldTag::str() const {
  switch (kind) {
    case FieldKind::Q: return "Q";
    case FieldKind::Qp: return "Q" + std::to_string(p);
    case FieldKind::Fp: return "F" + std::to_string(p);
  }
  return "?";
}

bool is_prime_number(unsigned long n) {
  if (n < 2) return false;
  for (unsigned long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<unsigned> prime_divisors(unsigned long n) {
  std::vector<unsigned> out;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d) continue;
    out.push_back(static_cast<unsigned>(d));
    while (n % d == 0) n /= d;
  }
  if (n > 1) out.push_back(static_cast<unsigned>(n));
  return out;
}

std::vector<unsigned> acting_units(unsigned e, FieldTag field) {
  if (field.kind != FieldKind::Q && !is_prime_number(field.p))
    throw Error(ErrorCode::NotPrime, std::to_string(field.p) + " is not prime");
  if (e <= 1) return {1};
  std::vector<unsigned> out;
  if (field.kind == FieldKind::Fp) {
    unsigned m = e;
    while (m % field.p == 0) m /= field.p;
    if (m == 1) return {1};
    unsigned t = 1;
    do {
      out.push_back(t);
      t = static_cast<unsigned>((static_cast<unsigned long>(t) * field.p) % m);
    } while (t != 1);
    std::sort(out.begin(), out.end());
    return out;
  }
  unsigned m = e;
  if (field.kind == FieldKind::Qp)
    while (m % field.p == 0) m /= field.p;
  std::vector<bool> in_powers(m, false);
  if (field.kind == FieldKind::Qp && m > 1) {
    unsigned t = 1 % m;
    do {
      in_powers[t] = true;
      t = static_cast<unsigned>((static_cast<unsigned long>(t) * field.p) % m);
    } while (!in_powers[t]);
  }
  for (unsigned t = 1; t < e; ++t) {
    if (std::gcd(t, e) != 1) continue;
    if (field.kind == FieldKind::Qp && m > 1 && !in_powers[t % m]) continue;
    out.push_back(t);
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

std::vector<std::vector<std::size_t>> collect(UnionFind& uf, const std::vector<bool>& include) {
  std::vector<std::vector<std::size_t>> orbits;
  std::vector<std::size_t> slot(include.size(), GaloisPartition::npos);
  for (std::size_t i = 0; i < include.size(); ++i) {
    if (!include[i]) continue;
    std::size_t r = uf.find(i);
    if (slot[r] == GaloisPartition::npos) {
      slot[r] = orbits.size();
      orbits.emplace_back();
    }
    orbits[slot[r]].push_back(i);
  }
  return orbits;
}

}  // namespace

GaloisPartition galois_partition(const FiniteGroup& g, FieldTag field) {
  const ClassData& cd = g.classes();
  const auto units = acting_units(cd.exponent(), field);
  std::vector<bool> include(cd.count(), true);
  if (field.kind == FieldKind::Fp)
    for (std::size_t c = 0; c < cd.count(); ++c) include[c] = cd.order(c) % field.p != 0;
  UnionFind uf(cd.count());
  for (std::size_t c = 0; c < cd.count(); ++c) {
    if (!include[c]) continue;
    for (unsigned t : units) uf.unite(c, cd.power(c, t));
  }
  GaloisPartition part;
  part.field = field;
  part.orbits = collect(uf, include);
  part.orbit_of.assign(cd.count(), GaloisPartition::npos);
  for (std::size_t o = 0; o < part.orbits.size(); ++o)
    for (std::size_t c : part.orbits[o]) part.orbit_of[c] = o;
  return part;
}

std::vector<std::vector<std::size_t>> character_orbits(const CharacterTable& t,
                                                       const std::vector<unsigned>& units) {
  const ClassData& cd = t.classes();
  UnionFind uf(t.size());
  for (std::size_t i = 0; i < t.size(); ++i)
    for (unsigned u : units) {
      if (u == 1) continue;
      ClassFunction tw = power_twist(cd, t.row(i), u);
      auto it = std::find(t.rows().begin(), t.rows().end(), tw);
      if (it == t.rows().end()) throw Error(ErrorCode::Internal, "Galois twist of a character is not irreducible");
      uf.unite(i, static_cast<std::size_t>(it - t.rows().begin()));
    }
  return collect(uf, std::vector<bool>(t.size(), true));
}

int fs_indicator(const CharacterTable& t, std::size_t i) {
  const ClassData& cd = t.classes();
  Cyclotomic sum;
  for (std::size_t c = 0; c < cd.count(); ++c)
    sum += Cyclotomic(static_cast<long>(cd.size(c))) * t.value(i, cd.power(c, 2));
  auto v = (sum * Cyclotomic(Rat(1, static_cast<unsigned long>(t.group().order())))).rational();
  if (!v || (*v != 1 && *v != 0 && *v != -1))
    throw Error(ErrorCode::Internal, "Frobenius-Schur indicator outside {-1,0,1}");
  return static_cast<int>(v->get_num().get_si());
}

unsigned SchurData::at(unsigned p) const {
  auto it = m_p.find(p);
  return it == m_p.end() ? 1u : it->second;
}

namespace {

std::string fnv1a(const std::string& s) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace

std::string group_fingerprint(const CharacterTable& t) {
  const ClassData& cd = t.classes();
  std::vector<std::pair<unsigned, std::size_t>> cls;
  for (std::size_t c = 0; c < cd.count(); ++c) cls.emplace_back(cd.order(c), cd.size(c));
  std::sort(cls.begin(), cls.end());
  std::vector<long> degs;
  for (std::size_t i = 0; i < t.size(); ++i) degs.push_back(t.degree(i));
  std::sort(degs.begin(), degs.end());
  std::ostringstream s;
  s << "order=" << t.group().order() << ";classes=";
  for (auto [o, n] : cls) s << '(' << o << ',' << n << ')';
  s << ";degrees=";
  for (long d : degs) s << d << ',';
  return fnv1a(s.str());
}

std::string orbit_fingerprint(const CharacterTable& t, const std::vector<std::size_t>& orbit) {
  const ClassData& cd = t.classes();
  ClassFunction sum(cd.count());
  for (std::size_t i : orbit)
    for (std::size_t c = 0; c < cd.count(); ++c) sum[c] += t.value(i, c);
  GaloisPartition q = galois_partition(t.group(), FieldTag::rationals());
  std::vector<std::string> triples;
  for (const auto& o : q.orbits) {
    std::size_t size = 0;
    for (std::size_t c : o) size += cd.size(c);
    auto v = sum[o.front()].rational();
    if (!v) throw Error(ErrorCode::Internal, "orbit sum is not rational");
    triples.push_back(std::to_string(cd.order(o.front())) + "," + std::to_string(size) + "," + v->get_str());
  }
  std::sort(triples.begin(), triples.end());
  std::string s = "degree=" + sum[0].str() + ";";
  for (const auto& tr : triples) s += "(" + tr + ")";
  return fnv1a(s);
}

// ---------------------------------------------------------------------------

void SchurProvider::declare(const std::string& group, const std::string& name) {
  auto [it, fresh] = groups_.emplace(group, name);
  if (!fresh && it->second.empty()) it->second = name;
}

void SchurProvider::add(const std::string& group, const std::string& irr, unsigned p, unsigned m) {
  if (m == 0) throw Error(ErrorCode::DataConflict, "Schur index must be positive");
  declare(group, "");
  auto& slot = entries_[{group, irr}];
  auto [it, fresh] = slot.emplace(p, m);
  if (!fresh && it->second != m)
    throw Error(ErrorCode::DataConflict, "conflicting Schur index entries for group " + group + " irr " + irr);
}

std::string SchurProvider::group_name(const std::string& group) const {
  auto it = groups_.find(group);
  return it == groups_.end() ? std::string() : it->second;
}

std::map<unsigned, unsigned> SchurProvider::lookup(const std::string& group, const std::string& irr) const {
  if (!knows(group))
    throw Error(ErrorCode::UnknownSchurIndex,
                "no Schur index data for group " + group + " (orbit " + irr + ")");
  auto it = entries_.find({group, irr});
  if (it == entries_.end()) return {};
  return it->second;
}

void SchurProvider::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read Schur data file " + file.string());
  files_.push_back(file.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto where = [&] { return file.string() + ":" + std::to_string(lineno); };
    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      const std::string tag = "# provenance:";
      if (line.compare(first, tag.size(), tag) == 0) {
        std::string note = line.substr(first + tag.size());
        note.erase(0, note.find_first_not_of(' '));
        provenance_.push_back(note);
      }
      continue;
    }
    std::istringstream ls(line);
    std::string kw;
    ls >> kw;
    if (kw != "schur") throw Error(ErrorCode::ParseError, where() + ": expected 'schur'");
    std::map<std::string, std::string> kv;
    std::string field;
    while (ls >> field) {
      auto eq = field.find('=');
      if (eq == std::string::npos || eq == 0)
        throw Error(ErrorCode::ParseError, where() + ": expected key=value, found '" + field + "'");
      kv[field.substr(0, eq)] = field.substr(eq + 1);
    }
    if (!kv.count("group")) throw Error(ErrorCode::ParseError, where() + ": missing group=");
    const std::string group = kv["group"];
    if (!kv.count("irr")) {
      declare(group, kv.count("name") ? kv["name"] : "");
      continue;
    }
    if (!kv.count("p") || !kv.count("m")) throw Error(ErrorCode::ParseError, where() + ": missing p= or m=");
    unsigned p = 0;
    try {
      if (kv["p"] != "inf") p = static_cast<unsigned>(std::stoul(kv["p"]));
      unsigned m = static_cast<unsigned>(std::stoul(kv["m"]));
      if (kv["p"] != "inf" && !is_prime_number(p))
        throw Error(ErrorCode::ParseError, where() + ": p must be a prime or inf");
      if (kv.count("name")) declare(group, kv["name"]);
      add(group, kv["irr"], p, m);
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::ParseError, where() + ": malformed number");
    }
  }
}

std::vector<RationalIrr> rational_irreducibles(const CharacterTable& t, const SchurProvider& provider) {
  const ClassData& cd = t.classes();
  const unsigned long order = t.group().order();
  const std::string gfp = group_fingerprint(t);
  const auto orbits = character_orbits(t, acting_units(cd.exponent(), FieldTag::rationals()));
  std::vector<RationalIrr> out;
  for (const auto& orbit : orbits) {
    RationalIrr irr;
    irr.orbit = orbit;
    irr.center_degree = orbit.size();
    irr.constituent_degree = t.degree(orbit.front());
    irr.fs = fs_indicator(t, orbit.front());
    irr.fingerprint = orbit_fingerprint(t, orbit);
    irr.schur.m_infinity = irr.fs == -1 ? 2 : 1;
    auto listed = provider.lookup(gfp, irr.fingerprint);
    for (auto [p, m] : listed) {
      if (p == 0) {
        if (m != irr.schur.m_infinity)
          throw Error(ErrorCode::DataConflict,
                      "Schur data gives m_inf=" + std::to_string(m) + " but the Frobenius-Schur indicator is " +
                          std::to_string(irr.fs) + " (group " + gfp + ", orbit " + irr.fingerprint + ")");
        continue;
      }
      if (order % p != 0)
        throw Error(ErrorCode::DataConflict, "Schur data lists prime " + std::to_string(p) +
                                                 " not dividing the group order (group " + gfp + ")");
      irr.schur.m_p[p] = m;
    }
    unsigned mg = irr.schur.m_infinity;
    for (auto [p, m] : irr.schur.m_p) mg = std::lcm(mg, m);
    irr.schur.m_global = mg;
    if (irr.constituent_degree % static_cast<long>(mg) != 0)
      throw Error(ErrorCode::DataConflict, "Schur index " + std::to_string(mg) +
                                               " does not divide the character degree (orbit " + irr.fingerprint + ")");
    irr.character.assign(cd.count(), Cyclotomic());
    for (std::size_t i : orbit)
      for (std::size_t c = 0; c < cd.count(); ++c) irr.character[c] += t.value(i, c);
    for (auto& v : irr.character) v *= Cyclotomic(static_cast<long>(mg));
    irr.degree = irr.character[0].rational()->get_num().get_si();
    out.push_back(std::move(irr));
  }
  return out;
}

unsigned s_count(const std::vector<RationalIrr>& irrs, unsigned long group_order) {
  const auto primes = prime_divisors(group_order);
  unsigned s = 0;
  for (const auto& irr : irrs) {
    if (irr.schur.m_global % 2 != 0) continue;
    bool all_odd = std::all_of(primes.begin(), primes.end(), [&](unsigned p) { return irr.schur.at(p) % 2 == 1; });
    if (all_odd) ++s;
  }
  return s;
}

std::vector<QpIrr> qp_irreducible_characters(const CharacterTable& t, unsigned p,
                                             const std::vector<RationalIrr>& irrs) {
  const ClassData& cd = t.classes();
  const auto sub = character_orbits(t, acting_units(cd.exponent(), FieldTag::padic(p)));
  std::vector<std::size_t> sub_of(t.size());
  for (std::size_t s = 0; s < sub.size(); ++s)
    for (std::size_t i : sub[s]) sub_of[i] = s;
  std::vector<QpIrr> out;
  for (std::size_t I = 0; I < irrs.size(); ++I) {
    std::vector<std::size_t> seen;
    for (std::size_t i : irrs[I].orbit) {
      std::size_t s = sub_of[i];
      if (std::find(seen.begin(), seen.end(), s) != seen.end()) continue;
      seen.push_back(s);
      QpIrr q;
      q.parent = I;
      q.members = sub[s];
      q.m_p = irrs[I].schur.at(p);
      q.character.assign(cd.count(), Cyclotomic());
      for (std::size_t j : q.members)
        for (std::size_t c = 0; c < cd.count(); ++c) q.character[c] += t.value(j, c);
      for (auto& v : q.character) v *= Cyclotomic(static_cast<long>(q.m_p));
      out.push_back(std::move(q));
    }
  }
  return out;
}

}  // namespace kzq
