#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "hhlsim/encoding.hpp"

namespace hhl {

/// On-disk problem definition. Line oriented: each line is `key values...`,
/// `#` starts a comment, blank lines are ignored. Keys `A` and `b` may repeat
/// (one matrix row or vector chunk per line); complex entries are written as
/// `re` or `re+imj` / `re-imj`. `nb`, `n`, `A`, `b` are required; `C` and
/// `mode` (exact | rounded) are optional.
struct Problem {
    int nb = 1;
    int n = 1;
    Eigen::MatrixXcd A;
    Eigen::VectorXcd b;
    std::optional<double> C;
    std::optional<EncodingMode> mode;
};

Problem parse_problem(const std::string& text);
Problem load_problem(const std::filesystem::path& path);

/// Inverse of parse_problem; numbers are written with enough digits that a
/// parse-serialize-parse round trip is lossless.
std::string serialize_problem(const Problem& problem);

std::string format_complex_token(Complex value);
Complex parse_complex_token(const std::string& token);

}  // namespace hhl
