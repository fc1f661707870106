#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kzq/rational_rep.hpp"

namespace kzq {

/// One index-2 embedding H -> K; `hom` is a "gen=word;..." list.
struct EmbeddingEntry {
  std::string h;
  std::string k;
  std::string hom;
};

/// Lines "embed <H> <K> <assignments>"; '#' starts a comment line.
std::vector<EmbeddingEntry> load_embeddings(const std::filesystem::path& file);

/// data_dir()/schur/*.schur, sorted by name.
std::vector<std::filesystem::path> default_schur_files();

/// Loads the given files, or the defaults when `files` is empty.
SchurProvider load_schur(const std::vector<std::string>& files = {});

}  // namespace kzq
