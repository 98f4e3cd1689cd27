#include "ssrent/io.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string_view>
#include <system_error>
#include <vector>

namespace ssrent {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

[[noreturn]] void fail(const std::string& source, int line, const std::string& reason) {
    throw ParseError(source + ":" + std::to_string(line) + ": " + reason);
}

double parse_double(std::string_view tok, const std::string& source, int line) {
    double value = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        fail(source, line, "expected a real number, got '" + std::string(tok) + "'");
    }
    return value;
}

int parse_int(std::string_view tok, const std::string& source, int line) {
    int value = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
    if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
        fail(source, line, "expected an integer, got '" + std::string(tok) + "'");
    }
    return value;
}

// Strips a trailing comment and surrounding whitespace; empty result means
// the line carries no content.
std::string_view content_of(std::string_view raw) {
    const auto hash = raw.find('#');
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    return trim(raw);
}

}  // namespace

PureState parse_state(std::istream& in, const std::string& source) {
    PureState psi;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string_view body = content_of(raw);
        if (body.empty()) continue;

        const auto colon = body.find(':');
        if (colon == std::string_view::npos) fail(source, line, "missing ':' between amplitude and occupations");
        const auto bar = body.find('|', colon + 1);
        if (bar == std::string_view::npos) fail(source, line, "missing '|' between the parties");

        const auto amp_tokens = split_ws(body.substr(0, colon));
        if (amp_tokens.size() != 2) fail(source, line, "amplitude must be two numbers (re im)");
        const double re = parse_double(amp_tokens[0], source, line);
        const double im = parse_double(amp_tokens[1], source, line);

        OccupationBasisVector label;
        for (const auto tok : split_ws(body.substr(colon + 1, bar - colon - 1))) {
            label.alice_occ.push_back(parse_int(tok, source, line));
        }
        for (const auto tok : split_ws(body.substr(bar + 1))) {
            label.bob_occ.push_back(parse_int(tok, source, line));
        }
        try {
            psi.add_term(std::move(label), Complex(re, im));
        } catch (const std::invalid_argument& e) {
            fail(source, line, e.what());
        }
    }
    if (psi.empty()) throw ParseError(source + ": state file holds no terms");
    return psi;
}

PureState load_state_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    return parse_state(in, path);
}

void write_state(std::ostream& out, const PureState& psi) {
    for (const auto& [label, amp] : psi.terms()) {
        out << format_real(amp.real()) << ' ' << format_real(amp.imag()) << " :";
        for (int n : label.alice_occ) out << ' ' << n;
        out << " |";
        for (int n : label.bob_occ) out << ' ' << n;
        out << '\n';
    }
}

LabeledMatrixFile parse_labeled_matrices(std::istream& in, const std::string& source) {
    LabeledMatrixFile file;
    std::string raw;
    int line = 0;

    auto next_content = [&](std::string_view& body) {
        while (std::getline(in, raw)) {
            ++line;
            body = content_of(raw);
            if (!body.empty()) return true;
        }
        return false;
    };

    std::string_view body;
    if (!next_content(body)) throw ParseError(source + ": empty matrix file");
    {
        const auto tokens = split_ws(body);
        if (tokens.size() != 2 || tokens[0] != "dim") fail(source, line, "expected header 'dim <d>'");
        file.dim = parse_int(tokens[1], source, line);
        if (file.dim < 1 || file.dim > 16384) fail(source, line, "dimension out of range");
    }

    while (next_content(body)) {
        const auto tokens = split_ws(body);
        if (tokens.empty() || tokens[0] != "element") fail(source, line, "expected 'element <label>'");
        if (tokens.size() < 2) fail(source, line, "element label missing");
        const std::string label(trim(body.substr(body.find("element") + 7)));

        Matrix m(file.dim, file.dim);
        for (int r = 0; r < file.dim; ++r) {
            if (!next_content(body)) fail(source, line, "matrix row missing for element '" + label + "'");
            const auto row = split_ws(body);
            if (static_cast<int>(row.size()) != 2 * file.dim) {
                fail(source, line, "matrix row needs " + std::to_string(2 * file.dim) + " numbers");
            }
            for (int c = 0; c < file.dim; ++c) {
                const double re = parse_double(row[2 * c], source, line);
                const double im = parse_double(row[2 * c + 1], source, line);
                m(r, c) = Complex(re, im);
            }
        }
        file.entries.emplace_back(label, std::move(m));
    }
    if (file.entries.empty()) throw ParseError(source + ": matrix file holds no elements");
    return file;
}

GroupAction load_group_action(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    auto file = parse_labeled_matrices(in, path);
    GroupAction action;
    action.elements = std::move(file.entries);
    try {
        action.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
    return action;
}

KrausChannel load_kraus_channel(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    auto file = parse_labeled_matrices(in, path);
    KrausChannel channel;
    channel.kraus_ops.reserve(file.entries.size());
    for (auto& [label, m] : file.entries) channel.kraus_ops.push_back(std::move(m));
    try {
        channel.validate();
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
    return channel;
}

std::string format_real(double x) {
    if (x == 0.0) return "0";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

}  // namespace ssrent
