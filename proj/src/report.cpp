#include "kzq/report.hpp"

#include <iomanip>
#include <sstream>

namespace kzq {

namespace {

Json counts_json(const std::map<unsigned, std::size_t>& m) {
  Json j = Json::object();
  for (auto [p, n] : m) j[std::to_string(p)] = n;
  return j;
}

Json header(const KTheoryReport& r, const std::string& group, const ReportContext& ctx) {
  Json j;
  j["schema"] = 1;
  j["group"] = group;
  j["r_q"] = r.r_q;
  j["r_qp"] = counts_json(r.r_qp);
  j["r_fp"] = counts_json(r.r_fp);
  j["carter_rank"] = r.carter_rank;
  j["s"] = r.s;
  j["k_minus_1"] = abtype_json(r.k_minus_1);
  j["sc_rank"] = r.sc_rank;
  j["image"] = nullptr;
  j["agreement"] = r.agreement;
  (void)ctx;
  return j;
}

void footer(Json& j, const KTheoryReport& r, const ReportContext& ctx) {
  j["k_minus_1_sc"] = abtype_json(r.k_minus_1_sc);
  j["sequence_exact"] = r.sequence_exact;
  Json in = Json::object();
  in["command"] = ctx.command;
  for (const auto& [k, v] : ctx.input) in[k] = v;
  j["input"] = in;
  j["seed"] = ctx.seed;
  j["schur_data"] = ctx.schur_files;
  j["provenance"] = ctx.provenance;
}

Json vertex_json(const KTheoryReport& r) {
  Json j;
  j["group"] = r.group;
  j["r_q"] = r.r_q;
  j["s"] = r.s;
  j["k_minus_1"] = abtype_json(r.k_minus_1);
  j["agreement"] = r.agreement;
  return j;
}

std::string join_counts(const std::map<unsigned, std::size_t>& m) {
  std::ostringstream s;
  bool first = true;
  for (auto [p, n] : m) {
    s << (first ? "" : " ") << p << ":" << n;
    first = false;
  }
  return first ? "-" : s.str();
}

class Table {
 public:
  void add(const std::string& k, const std::string& v) { rows_.emplace_back(k, v); }
  std::string str() const {
    std::size_t w = 0;
    for (const auto& [k, v] : rows_) w = std::max(w, k.size());
    std::ostringstream s;
    for (const auto& [k, v] : rows_) s << std::left << std::setw(static_cast<int>(w) + 2) << k << v << "\n";
    return s.str();
  }

 private:
  std::vector<std::pair<std::string, std::string>> rows_;
};

void group_rows(Table& t, const KTheoryReport& r, const std::string& prefix) {
  t.add(prefix + "r_Q", std::to_string(r.r_q));
  t.add(prefix + "r_Qp", join_counts(r.r_qp));
  t.add(prefix + "r_Fp", join_counts(r.r_fp));
  t.add(prefix + "carter rank", std::to_string(r.carter_rank));
  t.add(prefix + "s", std::to_string(r.s));
  t.add(prefix + "K_-1 (carter)", r.k_minus_1.str());
  t.add(prefix + "K_-1 (SC)", r.k_minus_1_sc.str());
  t.add(prefix + "SC rank", std::to_string(r.sc_rank));
  t.add(prefix + "agreement", r.agreement ? "yes" : "NO");
}

void context_rows(Table& t, const ReportContext& ctx) {
  t.add("seed", std::to_string(ctx.seed));
  for (const auto& f : ctx.schur_files) t.add("schur data", f);
  for (const auto& p : ctx.provenance) t.add("provenance", p);
}

}  // namespace

Json abtype_json(const AbType& t) {
  Json j;
  j["rank"] = t.rank;
  Json tors = Json::array();
  for (const auto& d : t.torsion) tors.push_back(d.get_si());
  j["torsion"] = tors;
  return j;
}

Json invariants_json(const KTheoryReport& r, const ReportContext& ctx) {
  Json j = header(r, r.group, ctx);
  footer(j, r, ctx);
  return j;
}

std::string invariants_text(const KTheoryReport& r, const ReportContext& ctx) {
  Table t;
  t.add("group", r.group);
  group_rows(t, r, "");
  context_rows(t, ctx);
  return t.str();
}

Json amalgam_json(const std::string& label, const KTheoryReport& h, const KTheoryReport& k1,
                  const KTheoryReport& k2, const ImageResult& im, const ReportContext& ctx) {
  Json j = header(h, label, ctx);
  j["image"] = abtype_json(im.image);
  j["agreement"] = h.agreement && k1.agreement && k2.agreement && im.agreement;
  j["edge"] = h.group;
  j["vertices"] = Json::array({vertex_json(k1), vertex_json(k2)});
  Json ker;
  ker["k0q"] = abtype_json(im.ker_k0q);
  ker["sc"] = abtype_json(im.ker_sc);
  ker["k_minus_1"] = abtype_json(im.ker_k_minus_1);
  j["kernels"] = ker;
  j["snake_image"] = abtype_json(im.snake_image);
  j["image_unreduced"] = abtype_json(im.image_unreduced);
  j["snake_exact"] = im.snake_exact;
  footer(j, h, ctx);
  return j;
}

std::string amalgam_text(const std::string& label, const KTheoryReport& h, const KTheoryReport& k1,
                         const KTheoryReport& k2, const ImageResult& im, const ReportContext& ctx) {
  Table t;
  t.add("amalgam", label);
  t.add("H", h.group);
  group_rows(t, h, "H ");
  t.add("K1", k1.group + "  K_-1 = " + k1.k_minus_1.str());
  t.add("K2", k2.group + "  K_-1 = " + k2.k_minus_1.str());
  t.add("ker K~0 Q", im.ker_k0q.str());
  t.add("ker SC", im.ker_sc.str());
  t.add("ker K_-1", im.ker_k_minus_1.str());
  t.add("image", im.image.str());
  t.add("image (snake)", im.snake_image.str());
  t.add("image (unreduced)", im.image_unreduced.str());
  t.add("agreement", h.agreement && k1.agreement && k2.agreement && im.agreement ? "yes" : "NO");
  context_rows(t, ctx);
  return t.str();
}

Json vc1_json(const std::string& label, const KTheoryReport& h, const Vc1Result& v,
              const ReportContext& ctx) {
  Json j = header(h, label, ctx);
  j["image"] = abtype_json(v.image);
  j["agreement"] = h.agreement && v.image.is_zero() && v.k0q.torsion.empty() && v.k0q.rank == v.orbits;
  j["edge"] = h.group;
  j["orbits"] = v.orbits;
  j["k0q"] = abtype_json(v.k0q);
  footer(j, h, ctx);
  return j;
}

std::string vc1_text(const std::string& label, const KTheoryReport& h, const Vc1Result& v,
                     const ReportContext& ctx) {
  Table t;
  t.add("group", label);
  t.add("H", h.group);
  t.add("orbits", std::to_string(v.orbits));
  t.add("K_0 QG", v.k0q.str());
  t.add("image", v.image.str() + (v.image.is_zero() ? " (trivial, as for every VC1 group)" : ""));
  group_rows(t, h, "H ");
  context_rows(t, ctx);
  return t.str();
}

}  // namespace kzq
