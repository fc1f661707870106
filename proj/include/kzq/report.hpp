#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kzq/ktheory.hpp"

namespace kzq {

using Json = nlohmann::ordered_json;

/// Echoed inputs and data provenance carried into every report.
struct ReportContext {
  std::string command;
  std::vector<std::pair<std::string, std::string>> input;
  std::uint64_t seed = 0;
  std::vector<std::string> schur_files;
  std::vector<std::string> provenance;
};

Json abtype_json(const AbType& t);

/// Schema-1 object for one group; "image" is null.
Json invariants_json(const KTheoryReport& r, const ReportContext& ctx);
std::string invariants_text(const KTheoryReport& r, const ReportContext& ctx);

/// Top-level invariants describe the edge group H; "vertices" holds K1 and K2.
Json amalgam_json(const std::string& label, const KTheoryReport& h, const KTheoryReport& k1,
                  const KTheoryReport& k2, const ImageResult& im, const ReportContext& ctx);
std::string amalgam_text(const std::string& label, const KTheoryReport& h, const KTheoryReport& k1,
                         const KTheoryReport& k2, const ImageResult& im, const ReportContext& ctx);

Json vc1_json(const std::string& label, const KTheoryReport& h, const Vc1Result& v,
              const ReportContext& ctx);
std::string vc1_text(const std::string& label, const KTheoryReport& h, const Vc1Result& v,
                     const ReportContext& ctx);

}  // namespace kzq
