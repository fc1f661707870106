#include "kzq/fixtures.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "kzq/error.hpp"
#include "kzq/presentation.hpp"

namespace kzq {

std::vector<EmbeddingEntry> load_embeddings(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read embedding file " + file.string());
  std::vector<EmbeddingEntry> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string kw;
    if (!(ls >> kw) || kw[0] == '#') continue;
    EmbeddingEntry e;
    if (kw != "embed" || !(ls >> e.h >> e.k))
      throw Error(ErrorCode::ParseError, file.string() + ":" + std::to_string(lineno) + ": expected 'embed H K map'");
    std::getline(ls, e.hom);
    e.hom.erase(0, e.hom.find_first_not_of(" \t"));
    while (!e.hom.empty() && std::isspace(static_cast<unsigned char>(e.hom.back()))) e.hom.pop_back();
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<std::filesystem::path> default_schur_files() {
  std::vector<std::filesystem::path> out;
  std::error_code ec;
  auto dir = data_dir() / "schur";
  if (!std::filesystem::is_directory(dir, ec)) return out;
  for (const auto& entry : std::filesystem::directory_iterator(dir, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".schur") out.push_back(entry.path());
  std::sort(out.begin(), out.end());
  return out;
}

SchurProvider load_schur(const std::vector<std::string>& files) {
  SchurProvider p;
  if (files.empty()) {
    for (const auto& f : default_schur_files()) p.load(f);
  } else {
    for (const auto& f : files) p.load(f);
  }
  return p;
}

}  // namespace kzq
