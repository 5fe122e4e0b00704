#include "hhlsim/problem.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

namespace hhl {

namespace {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end != begin + text.size() || text.empty())
        throw ParseError("problem file: bad number '" + text + "'");
    return v;
}

long parse_int(const std::string& text) {
    const char* begin = text.c_str();
    char* end = nullptr;
    const long v = std::strtol(begin, &end, 10);
    if (end != begin + text.size() || text.empty())
        throw ParseError("problem file: bad integer '" + text + "'");
    return v;
}

}  // namespace

std::string format_complex_token(Complex value) {
    if (value.imag() == 0.0) return format_double(value.real());
    std::string out = format_double(value.real());
    if (value.imag() >= 0.0) out += "+";
    out += format_double(value.imag()) + "j";
    return out;
}

Complex parse_complex_token(const std::string& token) {
    if (token.empty()) throw ParseError("problem file: empty number");
    if (token.back() != 'j') return Complex{parse_double(token), 0.0};

    const std::string body = token.substr(0, token.size() - 1);
    // Split at the last +/- that is not an exponent sign and not leading.
    std::size_t split = std::string::npos;
    for (std::size_t i = body.size(); i-- > 1;) {
        const char ch = body[i];
        if ((ch == '+' || ch == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos)
        throw ParseError("problem file: complex entry '" + token +
                         "' must look like re+imj or re-imj");
    const std::string re = body.substr(0, split);
    std::string im = body.substr(split);
    if (im == "+" || im == "-") im += "1";
    return Complex{parse_double(re), parse_double(im)};
}

Problem parse_problem(const std::string& text) {
    std::optional<long> nb, n;
    std::optional<double> C;
    std::optional<EncodingMode> mode;
    std::vector<Complex> a_entries, b_entries;

    std::istringstream lines(text);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        std::istringstream words(line);
        std::string key;
        if (!(words >> key)) continue;

        std::vector<std::string> toks;
        for (std::string w; words >> w;) toks.push_back(w);
        const std::string where = " (line " + std::to_string(lineno) + ")";

        if (key == "nb" || key == "n") {
            if (toks.size() != 1)
                throw ParseError("problem file: '" + key + "' takes one value" + where);
            (key == "nb" ? nb : n) = parse_int(toks[0]);
        } else if (key == "A") {
            for (const std::string& t : toks) a_entries.push_back(parse_complex_token(t));
        } else if (key == "b") {
            for (const std::string& t : toks) b_entries.push_back(parse_complex_token(t));
        } else if (key == "C") {
            if (toks.size() != 1) throw ParseError("problem file: 'C' takes one value" + where);
            C = parse_double(toks[0]);
        } else if (key == "mode") {
            if (toks.size() != 1)
                throw ParseError("problem file: 'mode' takes one value" + where);
            if (toks[0] == "exact")
                mode = EncodingMode::Exact;
            else if (toks[0] == "rounded")
                mode = EncodingMode::Rounded;
            else
                throw ParseError("problem file: mode must be 'exact' or 'rounded'" + where);
        } else {
            throw ParseError("problem file: unknown key '" + key + "'" + where);
        }
    }

    if (!nb) throw ParseError("problem file: missing 'nb'");
    if (!n) throw ParseError("problem file: missing 'n'");
    if (*nb < 1 || *nb > 12) throw ParseError("problem file: nb out of range");
    if (*n < 1 || *n > 24) throw ParseError("problem file: n out of range");

    const Eigen::Index dim = Eigen::Index{1} << *nb;
    if (a_entries.size() != static_cast<std::size_t>(dim * dim))
        throw ParseError("problem file: A needs " + std::to_string(dim * dim) +
                         " entries (row-major), got " + std::to_string(a_entries.size()));
    if (b_entries.size() != static_cast<std::size_t>(dim))
        throw ParseError("problem file: b needs " + std::to_string(dim) + " entries, got " +
                         std::to_string(b_entries.size()));

    Problem problem;
    problem.nb = static_cast<int>(*nb);
    problem.n = static_cast<int>(*n);
    problem.A.resize(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c)
            problem.A(r, c) = a_entries[static_cast<std::size_t>(r * dim + c)];
    problem.b.resize(dim);
    for (Eigen::Index j = 0; j < dim; ++j) problem.b[j] = b_entries[static_cast<std::size_t>(j)];
    problem.C = C;
    problem.mode = mode;
    return problem;
}

Problem load_problem(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::ios_base::failure("cannot open problem file: " + path.string());
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad()) throw std::ios_base::failure("cannot read problem file: " + path.string());
    return parse_problem(buffer.str());
}

std::string serialize_problem(const Problem& problem) {
    std::ostringstream os;
    os << "nb " << problem.nb << "\n";
    os << "n " << problem.n << "\n";
    for (Eigen::Index r = 0; r < problem.A.rows(); ++r) {
        os << "A";
        for (Eigen::Index c = 0; c < problem.A.cols(); ++c)
            os << " " << format_complex_token(problem.A(r, c));
        os << "\n";
    }
    os << "b";
    for (Eigen::Index j = 0; j < problem.b.size(); ++j)
        os << " " << format_complex_token(problem.b[j]);
    os << "\n";
    if (problem.C) os << "C " << format_double(*problem.C) << "\n";
    if (problem.mode)
        os << "mode " << (*problem.mode == EncodingMode::Exact ? "exact" : "rounded") << "\n";
    return os.str();
}

}  // namespace hhl
