#include "kzq/presentation.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

#include "kzq/error.hpp"

#ifndef KZQ_DEFAULT_DATA_DIR
#define KZQ_DEFAULT_DATA_DIR "data"
#endif

namespace kzq {

namespace {

class Lexer {
 public:
  explicit Lexer(std::string_view text) : s_(text) {}

  [[noreturn]] void fail(const std::string& expected) const { throw ParseError(i_, expected, s_); }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool at_end() {
    skip();
    return i_ == s_.size();
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool accept(char c) {
    if (!peek(c)) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("'") + c + "'");
  }
  bool peek_name() {
    skip();
    return i_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_');
  }
  std::string name() {
    if (!peek_name()) fail("generator name");
    std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    return s_.substr(start, i_ - start);
  }
  long long signed_int() {
    skip();
    std::size_t start = i_;
    bool neg = false;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) {
      neg = s_[i_] == '-';
      ++i_;
    }
    std::size_t digits = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (digits == i_) {
      i_ = digits;
      fail("integer");
    }
    if (i_ - digits > 9) {
      i_ = start;
      fail("integer of at most 9 digits");
    }
    long long v = std::stoll(s_.substr(digits, i_ - digits));
    return neg ? -v : v;
  }
  std::size_t pos() const { return i_; }
  void set_pos(std::size_t p) { i_ = p; }

 private:
  std::string s_;
  std::size_t i_ = 0;
};

Word read_word(Lexer& lx, const std::vector<std::string>& gens) {
  Word w;
  do {
    lx.skip();
    std::size_t at = lx.pos();
    std::string n = lx.name();
    std::size_t idx = gens.size();
    for (std::size_t k = 0; k < gens.size(); ++k)
      if (gens[k] == n) idx = k;
    if (idx == gens.size()) {
      lx.set_pos(at);
      lx.fail("declared generator name");
    }
    long long e = 1;
    if (lx.accept('^')) {
      lx.skip();
      std::size_t epos = lx.pos();
      e = lx.signed_int();
      if (e == 0) {
        lx.set_pos(epos);
        lx.fail("nonzero exponent");
      }
    }
    w.factors.emplace_back(idx, e);
  } while (lx.accept('*'));
  return w;
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  Lexer lx(text);
  Presentation p;
  do {
    lx.skip();
    std::size_t at = lx.pos();
    std::string n = lx.name();
    for (const std::string& g : p.gens)
      if (g == n) {
        lx.set_pos(at);
        lx.fail("distinct generator name");
      }
    p.gens.push_back(n);
  } while (lx.accept(','));
  lx.expect(';');
  if (!lx.at_end()) {
    do {
      p.relators.push_back(read_word(lx, p.gens));
    } while (lx.accept(','));
  }
  if (!lx.at_end()) lx.fail("',' or end of input");
  return p;
}

Word parse_word(std::string_view text, const std::vector<std::string>& gens) {
  Lexer lx(text);
  if (lx.accept('1')) {
    if (!lx.at_end()) lx.fail("end of input");
    return {};
  }
  Word w = read_word(lx, gens);
  if (!lx.at_end()) lx.fail("'*' or end of input");
  return w;
}

std::string to_string(const Word& w, const std::vector<std::string>& gens) {
  if (w.factors.empty()) return "1";
  std::string out;
  for (std::size_t i = 0; i < w.factors.size(); ++i) {
    if (i) out += "*";
    out += gens.at(w.factors[i].first);
    if (w.factors[i].second != 1) out += "^" + std::to_string(w.factors[i].second);
  }
  return out;
}

std::string to_string(const Presentation& p) {
  std::string out;
  for (std::size_t i = 0; i < p.gens.size(); ++i) out += (i ? "," : "") + p.gens[i];
  out += ";";
  for (std::size_t i = 0; i < p.relators.size(); ++i)
    out += (i ? "," : "") + to_string(p.relators[i], p.gens);
  return out;
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::size_t kUndef = std::numeric_limits<std::size_t>::max();

std::size_t inv_col(std::size_t x) { return x ^ 1u; }

// Letters 2g / 2g+1, freely and cyclically reduced.
std::vector<std::size_t> letters(const Word& w) {
  std::vector<std::size_t> out;
  for (auto [g, e] : w.factors) {
    std::size_t x = e > 0 ? 2 * g : 2 * g + 1;
    for (long long k = 0; k < (e > 0 ? e : -e); ++k) {
      if (!out.empty() && out.back() == inv_col(x))
        out.pop_back();
      else
        out.push_back(x);
    }
  }
  std::size_t a = 0, b = out.size();
  while (b - a >= 2 && out[a] == inv_col(out[b - 1])) {
    ++a;
    --b;
  }
  return {out.begin() + static_cast<long>(a), out.begin() + static_cast<long>(b)};
}

class Enumerator {
 public:
  Enumerator(std::size_t n_gens, std::size_t budget) : cols_(2 * n_gens), budget_(budget) {
    new_row();
  }

  std::size_t size() const { return table_.size(); }
  bool live(std::size_t c) const { return parent_[c] == c; }

  void define(std::size_t c, std::size_t x) {
    if (table_.size() >= budget_)
      throw Error(ErrorCode::EnumerationBudgetExceeded,
                  "coset enumeration exceeded " + std::to_string(budget_) + " cosets");
    std::size_t d = new_row();
    table_[c][x] = d;
    table_[d][inv_col(x)] = c;
  }

  void scan_and_fill(std::size_t c, const std::vector<std::size_t>& w) {
    if (w.empty()) return;
    std::size_t f = c, b = c;
    long i = 0, j = static_cast<long>(w.size()) - 1;
    for (;;) {
      while (i <= j && table_[f][w[i]] != kUndef) f = table_[f][w[i++]];
      if (i > j) {
        if (f != b) coincidence(f, b);
        return;
      }
      while (j >= i && table_[b][inv_col(w[j])] != kUndef) b = table_[b][inv_col(w[j--])];
      if (j < i) {
        coincidence(f, b);
        return;
      }
      if (i == j) {
        table_[f][w[i]] = b;
        table_[b][inv_col(w[i])] = f;
        return;
      }
      define(f, w[i]);
    }
  }

  void fill_row(std::size_t c) {
    for (std::size_t x = 0; x < cols_ && live(c); ++x)
      if (table_[c][x] == kUndef) define(c, x);
  }

  CosetTable compact() {
    std::vector<std::size_t> index(table_.size(), kUndef);
    std::size_t n = 0;
    for (std::size_t c = 0; c < table_.size(); ++c)
      if (live(c)) index[c] = n++;
    CosetTable t;
    t.n_gens = cols_ / 2;
    t.defined = table_.size();
    t.rows.assign(n, std::vector<std::size_t>(cols_, 0));
    for (std::size_t c = 0; c < table_.size(); ++c) {
      if (!live(c)) continue;
      for (std::size_t x = 0; x < cols_; ++x) {
        std::size_t d = table_[c][x];
        if (d == kUndef) throw Error(ErrorCode::Internal, "coset table incomplete");
        t.rows[index[c]][x] = index[rep(d)];
      }
    }
    return t;
  }

 private:
  std::size_t new_row() {
    table_.emplace_back(cols_, kUndef);
    parent_.push_back(parent_.size());
    return table_.size() - 1;
  }

  std::size_t rep(std::size_t c) {
    std::size_t r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      std::size_t next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(std::size_t k, std::size_t l, std::vector<std::size_t>& queue) {
    k = rep(k);
    l = rep(l);
    if (k == l) return;
    std::size_t lo = std::min(k, l), hi = std::max(k, l);
    parent_[hi] = lo;
    queue.push_back(hi);
  }

  void coincidence(std::size_t a, std::size_t b) {
    std::vector<std::size_t> queue;
    merge(a, b, queue);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::size_t e = queue[qi];
      for (std::size_t x = 0; x < cols_; ++x) {
        std::size_t f = table_[e][x];
        if (f == kUndef) continue;
        if (table_[f][inv_col(x)] == e) table_[f][inv_col(x)] = kUndef;
        std::size_t e1 = rep(e), f1 = rep(f);
        if (table_[e1][x] != kUndef) {
          merge(f1, table_[e1][x], queue);
        } else if (table_[f1][inv_col(x)] != kUndef) {
          merge(e1, table_[f1][inv_col(x)], queue);
        } else {
          table_[e1][x] = f1;
          table_[f1][inv_col(x)] = e1;
        }
      }
    }
  }

  std::size_t cols_;
  std::size_t budget_;
  std::vector<std::vector<std::size_t>> table_;
  std::vector<std::size_t> parent_;
};

}  // namespace

CosetTable enumerate_cosets(const Presentation& p, std::size_t budget) {
  std::vector<std::vector<std::size_t>> rels;
  for (const Word& w : p.relators) {
    auto l = letters(w);
    if (!l.empty()) rels.push_back(std::move(l));
  }
  Enumerator en(p.gens.size(), budget);
  for (std::size_t c = 0; c < en.size(); ++c) {
    if (!en.live(c)) continue;
    for (const auto& w : rels) {
      en.scan_and_fill(c, w);
      if (!en.live(c)) break;
    }
    if (en.live(c)) en.fill_row(c);
  }
  return en.compact();
}

FiniteGroup todd_coxeter(const Presentation& p, std::size_t budget) {
  CosetTable t = enumerate_cosets(p, budget);
  std::vector<Perm> gens;
  for (std::size_t g = 0; g < t.n_gens; ++g) {
    std::vector<Point> img(t.count());
    for (std::size_t c = 0; c < t.count(); ++c) img[c] = static_cast<Point>(t.rows[c][2 * g]);
    gens.emplace_back(std::move(img));
  }
  FiniteGroup G = FiniteGroup::from_generators(std::move(gens), p.gens, t.count(),
                                               std::max(t.count(), FiniteGroup::kDefaultOrderBound));
  if (G.order() != t.count()) throw Error(ErrorCode::Internal, "regular representation order mismatch");
  return G;
}

Elem evaluate(const FiniteGroup& g, const Word& w) {
  Elem x = g.identity();
  for (auto [gen, e] : w.factors) x = g.mul(x, g.pow(g.generator(gen), e));
  return x;
}

GroupHom parse_hom(std::string_view text, const FiniteGroup& source, const FiniteGroup& target) {
  const auto& sgens = source.generator_names();
  const auto& tgens = target.generator_names();
  std::vector<Elem> images(sgens.size(), target.identity());
  std::vector<bool> assigned(sgens.size(), false);
  Lexer lx(text);
  if (!lx.at_end()) {
    do {
      lx.skip();
      std::size_t at = lx.pos();
      std::string n = lx.name();
      auto idx = source.generator_index(n);
      if (!idx) {
        lx.set_pos(at);
        lx.fail("source generator name");
      }
      if (assigned[*idx]) {
        lx.set_pos(at);
        lx.fail("generator not already assigned");
      }
      lx.expect('=');
      Word w;
      if (!lx.accept('1')) w = read_word(lx, tgens);
      images[*idx] = evaluate(target, w);
      assigned[*idx] = true;
    } while (lx.accept(';'));
  }
  if (!lx.at_end()) lx.fail("';' or end of input");
  for (std::size_t i = 0; i < sgens.size(); ++i)
    if (!assigned[i]) lx.fail("assignment for generator '" + sgens[i] + "'");
  return GroupHom(source, target, std::move(images));
}

std::string hom_to_string(const GroupHom& h) {
  const auto& sn = h.source().generator_names();
  const auto& tn = h.target().generator_names();
  std::string out;
  for (std::size_t i = 0; i < sn.size(); ++i) {
    if (i) out += ";";
    Word w;
    for (std::size_t g : h.target().word_of(h.gen_images()[i])) {
      if (!w.factors.empty() && w.factors.back().first == g)
        ++w.factors.back().second;
      else
        w.factors.emplace_back(g, 1);
    }
    out += sn[i] + "=" + to_string(w, tn);
  }
  return out;
}

// ---------------------------------------------------------------------------

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("KZQ_DATA_DIR"); env && *env) return env;
  return KZQ_DEFAULT_DATA_DIR;
}

namespace {

struct DataGroup {
  std::size_t degree = 0;
  std::vector<std::string> perms;
  std::vector<std::string> names;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::map<std::string, DataGroup> load_group_data(const std::filesystem::path& file) {
  std::map<std::string, DataGroup> out;
  std::ifstream in(file);
  if (!in) return out;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string kw, name;
    if (!(ls >> kw) || kw[0] == '#') continue;
    if (kw != "group" || !(ls >> name))
      throw Error(ErrorCode::ParseError, "malformed group data line: " + line);
    DataGroup g;
    std::string field;
    while (ls >> field) {
      auto eq = field.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::ParseError, "malformed group data field: " + field);
      std::string key = field.substr(0, eq), val = field.substr(eq + 1);
      if (key == "degree") g.degree = std::stoul(val);
      else if (key == "gens") g.perms = split(val, ';');
      else if (key == "names") g.names = split(val, ',');
      else throw Error(ErrorCode::ParseError, "unknown group data field: " + key);
    }
    out[name] = std::move(g);
  }
  return out;
}

const std::map<std::string, DataGroup>& group_data() {
  static std::mutex mu;
  static std::map<std::filesystem::path, std::map<std::string, DataGroup>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto path = data_dir() / "groups.dat";
  auto it = cache.find(path);
  if (it == cache.end()) it = cache.emplace(path, load_group_data(path)).first;
  return it->second;
}

bool parse_number(std::string_view s, unsigned long& out) {
  if (s.empty() || s.size() > 6) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  out = std::stoul(std::string(s));
  return true;
}

bool is_pow2(unsigned long n) { return n && !(n & (n - 1)); }

}  // namespace

std::string catalog_presentation(std::string_view name) {
  unsigned long n = 0;
  auto num = [&](std::size_t prefix) { return parse_number(name.substr(prefix), n); };
  if (name == "S3") return "a,b;a^3,b^2,b*a*b*a";
  if (name == "S4") return "a,b;a^4,b^2,a*b*a*b*a*b";
  if (name.starts_with("QD") && num(2) && is_pow2(n) && n >= 16) {
    const unsigned long h = n / 2;
    return "a,b;a^" + std::to_string(h) + ",b^2,b*a*b*a^-" + std::to_string(h / 2 - 1);
  }
  if (name.starts_with("Q") && num(1) && is_pow2(n) && n >= 8) {
    const unsigned long h = n / 2;
    return "r,s;r^" + std::to_string(h) + ",r^" + std::to_string(h / 2) + "*s^-2,s*r*s^-1*r^-" +
           std::to_string(h - 1);
  }
  if (name.starts_with("C") && num(1) && n >= 2) return "a;a^" + std::to_string(n);
  if (name.starts_with("D") && num(1) && n >= 2 && n % 2 == 0)
    return "a,b;a^" + std::to_string(n / 2) + ",b^2,b*a*b*a";
  return {};
}

std::vector<std::string> catalog_data_names() {
  std::vector<std::string> out;
  for (const auto& [k, v] : group_data()) out.push_back(k);
  return out;
}

namespace {

FiniteGroup catalog_single(const std::string& name) {
  if (name == "C1") return FiniteGroup::from_generators({}, {}, 1).with_label("C1");
  std::string pres = catalog_presentation(name);
  if (!pres.empty()) return todd_coxeter(parse_presentation(pres)).with_label(name);
  const auto& data = group_data();
  auto it = data.find(name);
  if (it == data.end()) throw Error(ErrorCode::UnknownName, "unknown group name '" + name + "'");
  std::vector<Perm> gens;
  for (const std::string& p : it->second.perms) gens.push_back(Perm::from_cycles(p, it->second.degree));
  return FiniteGroup::from_generators(std::move(gens), it->second.names, it->second.degree).with_label(name);
}

}  // namespace

FiniteGroup catalog(std::string_view name) {
  static std::mutex mu;
  static std::map<std::string, FiniteGroup> cache;
  const std::string key(name);
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  std::vector<std::string> parts = split(key, 'x');
  FiniteGroup g;
  if (parts.size() == 1) {
    g = catalog_single(key);
  } else {
    for (const std::string& p : parts)
      if (p.empty()) throw Error(ErrorCode::UnknownName, "unknown group name '" + key + "'");
    g = catalog_single(parts[0]);
    for (std::size_t i = 1; i < parts.size(); ++i) g = direct_product(g, catalog_single(parts[i]));
    g = g.with_label(key);
  }
  std::lock_guard<std::mutex> lock(mu);
  cache.emplace(key, g);
  return g;
}

namespace {

FiniteGroup single_spec(std::string part) {
  while (!part.empty() && std::isspace(static_cast<unsigned char>(part.front()))) part.erase(part.begin());
  while (!part.empty() && std::isspace(static_cast<unsigned char>(part.back()))) part.pop_back();
  if (part.starts_with("name:")) return catalog(part.substr(5));
  if (part.starts_with("pres:")) {
    std::string text = part.substr(5);
    return todd_coxeter(parse_presentation(text)).with_label(text);
  }
  if (part.empty()) throw ParseError(0, "group spec", part);
  return catalog(part);
}

}  // namespace

FiniteGroup group_from_spec(std::string_view spec) {
  std::string s(spec);
  std::vector<std::string> parts;
  std::size_t start = 0;
  for (std::size_t pos; (pos = s.find(" x ", start)) != std::string::npos; start = pos + 3)
    parts.push_back(s.substr(start, pos - start));
  parts.push_back(s.substr(start));
  FiniteGroup g = single_spec(parts[0]);
  std::string label = g.label();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    FiniteGroup h = single_spec(parts[i]);
    label += "x" + h.label();
    g = direct_product(g, h);
  }
  return parts.size() > 1 ? g.with_label(label) : g;
}

}  // namespace kzq
