#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "kzq/perm.hpp"

namespace kzq {

/// Product of generator powers: (generator index, nonzero exponent).
struct Word {
  std::vector<std::pair<std::size_t, long long>> factors;
  friend bool operator==(const Word&, const Word&) = default;
};

struct Presentation {
  std::vector<std::string> gens;
  std::vector<Word> relators;
  friend bool operator==(const Presentation&, const Presentation&) = default;
};

/// Grammar:
///   spec     := gens ";" relators?
///   gens     := name ("," name)*
///   relators := word ("," word)*
///   word     := factor ("*" factor)*
///   factor   := name ("^" signed-int)?
Presentation parse_presentation(std::string_view text);
std::string to_string(const Presentation& p);
std::string to_string(const Word& w, const std::vector<std::string>& gens);

/// Parses a word over `gens`; "1" denotes the empty word.
Word parse_word(std::string_view text, const std::vector<std::string>& gens);

/// Cosets of the trivial subgroup. Column 2g is generator g, 2g+1 its inverse.
struct CosetTable {
  std::size_t n_gens = 0;
  std::vector<std::vector<std::size_t>> rows;
  std::size_t count() const noexcept { return rows.size(); }
  std::size_t defined = 0;  // cosets ever defined, including ones later merged
};

constexpr std::size_t kDefaultCosetBudget = 100000;

/// HLT enumeration; throws EnumerationBudgetExceeded past `budget` definitions.
CosetTable enumerate_cosets(const Presentation& p, std::size_t budget = kDefaultCosetBudget);

/// Regular permutation representation on the cosets of the trivial subgroup.
FiniteGroup todd_coxeter(const Presentation& p, std::size_t budget = kDefaultCosetBudget);

/// Element named by a word in g's generators.
Elem evaluate(const FiniteGroup& g, const Word& w);

/// "gen=word;gen=word" generator images; empty text for groups without generators.
GroupHom parse_hom(std::string_view text, const FiniteGroup& source, const FiniteGroup& target);
std::string hom_to_string(const GroupHom& h);

/// Root of the bundled data files: $KZQ_DATA_DIR, else the install default.
std::filesystem::path data_dir();

/// Named groups: C<n>, D<2n>, Q<2^k>, QD<2^k>, S3, S4, SG(32,42), SG(32,44)
/// and direct products "AxB". Throws UnknownName.
FiniteGroup catalog(std::string_view name);
/// Presentation text used for a presented catalog name, or empty.
std::string catalog_presentation(std::string_view name);
/// Groups read from the bundled data file.
std::vector<std::string> catalog_data_names();

/// "name:<catalog>", "pres:<presentation>", or "A x B" products thereof.
FiniteGroup group_from_spec(std::string_view spec);

}  // namespace kzq
