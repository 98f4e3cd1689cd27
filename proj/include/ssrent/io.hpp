#pragma once

#include <iosfwd>
#include <string>

#include "ssrent/hilbert.hpp"

namespace ssrent {

// Parse or file-system errors carry "<source>:<line>: <reason>".
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// State files hold one term per line:
//   <re> <im> : <alice occupations> | <bob occupations>
// '#' starts a comment, blank lines are skipped, duplicate labels accumulate.
PureState parse_state(std::istream& in, const std::string& source);
PureState load_state_file(const std::string& path);
void write_state(std::ostream& out, const PureState& psi);

// Labeled-matrix files hold a header line "dim <d>", then per matrix a line
// "element <label>" followed by d rows of 2d numbers (re im pairs).
struct LabeledMatrixFile {
    int dim = 0;
    std::vector<std::pair<std::string, Matrix>> entries;
};
LabeledMatrixFile parse_labeled_matrices(std::istream& in, const std::string& source);

// Group action files are labeled-matrix files whose entries must be unitary.
GroupAction load_group_action(const std::string& path);
// Kraus files are labeled-matrix files whose entries must sum to a channel.
KrausChannel load_kraus_channel(const std::string& path);

// Shortest round-trip decimal with at most 12 significant digits, rendered
// without locale influence. Used for every number the CLI prints.
std::string format_real(double x);

}  // namespace ssrent
