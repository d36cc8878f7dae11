#include <cctype>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "crnepi/errors.hpp"
#include "crnepi/network.hpp"

namespace crnepi {

namespace {

enum class Tok { Ident, Number, Arrow, RevArrow, Colon, Plus, Eq, Comma, Semi, Bang, End };

struct Token {
    Tok kind;
    std::string text;
    int col;
};

std::vector<Token> lex_line(const std::string& line, int lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = line.size();
    while (i < n) {
        const unsigned char c = static_cast<unsigned char>(line[i]);
        const int col = static_cast<int>(i) + 1;
        if (std::isspace(c)) {
            ++i;
        } else if (std::isalpha(c) || c == '_') {
            std::size_t j = i + 1;
            while (j < n && (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_' || line[j] == '\''))
                ++j;
            out.push_back({Tok::Ident, line.substr(i, j - i), col});
            i = j;
        } else if (std::isdigit(c) || (c == '.' && i + 1 < n && std::isdigit(static_cast<unsigned char>(line[i + 1])))) {
            std::size_t j = i;
            while (j < n && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            if (j < n && line[j] == '.') {
                ++j;
                while (j < n && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            }
            if (j < n && (line[j] == 'e' || line[j] == 'E')) {
                std::size_t k = j + 1;
                if (k < n && (line[k] == '+' || line[k] == '-')) ++k;
                if (k < n && std::isdigit(static_cast<unsigned char>(line[k]))) {
                    while (k < n && std::isdigit(static_cast<unsigned char>(line[k]))) ++k;
                    j = k;
                }
            }
            out.push_back({Tok::Number, line.substr(i, j - i), col});
            i = j;
        } else if (c == '-' && i + 1 < n && line[i + 1] == '>') {
            out.push_back({Tok::Arrow, "->", col});
            i += 2;
        } else if (c == '<' && i + 2 < n && line[i + 1] == '-' && line[i + 2] == '>') {
            out.push_back({Tok::RevArrow, "<->", col});
            i += 3;
        } else if (c == '-' && i + 1 < n &&
                   (std::isdigit(static_cast<unsigned char>(line[i + 1])) || line[i + 1] == '.')) {
            // signed number (only meaningful in init/params values)
            std::size_t j = i + 1;
            while (j < n && (std::isdigit(static_cast<unsigned char>(line[j])) || line[j] == '.' ||
                             line[j] == 'e' || line[j] == 'E' ||
                             ((line[j] == '+' || line[j] == '-') && (line[j - 1] == 'e' || line[j - 1] == 'E'))))
                ++j;
            out.push_back({Tok::Number, line.substr(i, j - i), col});
            i = j;
        } else {
            Tok k;
            switch (c) {
            case ':': k = Tok::Colon; break;
            case '+': k = Tok::Plus; break;
            case '=': k = Tok::Eq; break;
            case ',': k = Tok::Comma; break;
            case ';': k = Tok::Semi; break;
            case '!': k = Tok::Bang; break;
            default:
                throw SyntaxError(lineno, col, std::string("unexpected character '") + line[i] + "'");
            }
            out.push_back({k, std::string(1, line[i]), col});
            ++i;
        }
    }
    out.push_back({Tok::End, "", static_cast<int>(n) + 1});
    return out;
}

class LineParser {
public:
    LineParser(std::vector<Token> toks, int lineno) : toks_(std::move(toks)), line_(lineno) {}

    const Token& peek() const { return toks_[pos_]; }
    bool at(Tok k) const { return peek().kind == k; }
    Token take() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
    Token expect(Tok k, const char* what) {
        if (!at(k)) error(std::string("expected ") + what + ", found " + describe(peek()));
        return take();
    }
    [[noreturn]] void error(const std::string& msg) const { throw SyntaxError(line_, peek().col, msg); }
    [[noreturn]] void error_at(const Token& t, const std::string& msg) const {
        throw SyntaxError(line_, t.col, msg);
    }
    static std::string describe(const Token& t) {
        return t.kind == Tok::End ? "end of line" : "'" + t.text + "'";
    }
    int line() const { return line_; }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    int line_;
};

struct ParseState {
    std::vector<std::string> species;
    std::map<std::string, std::size_t> index;
    std::vector<Reaction> reactions;
    std::map<std::string, double> params;
    std::map<std::string, double> init;
    std::optional<EpiDecl> epi;
};

double parse_real(LineParser& p, const Token& t) {
    char* end = nullptr;
    double v = std::strtod(t.text.c_str(), &end);
    if (end == t.text.c_str() || *end != '\0') p.error_at(t, "malformed number '" + t.text + "'");
    return v;
}

std::size_t species_of(const ParseState& st, LineParser& p, const Token& t) {
    auto it = st.index.find(t.text);
    if (it == st.index.end())
        throw Error(ErrorCode::UndeclaredSpecies,
                    "line " + std::to_string(p.line()) + ", column " + std::to_string(t.col) + ": '" +
                        t.text + "'");
    return it->second;
}

Complex parse_complex(const ParseState& st, LineParser& p) {
    if (p.at(Tok::Number) && p.peek().text == "0") {
        p.take();
        if (p.at(Tok::Ident)) p.error("the zero complex cannot take a species");
        if (p.at(Tok::Plus)) p.error("the zero complex cannot be combined with other terms");
        return Complex{};
    }
    std::map<std::size_t, int> coeffs;
    while (true) {
        int coef = 1;
        if (p.at(Tok::Number)) {
            Token t = p.take();
            for (char ch : t.text)
                if (!std::isdigit(static_cast<unsigned char>(ch)))
                    p.error_at(t, "stoichiometric coefficient must be a positive integer");
            coef = std::atoi(t.text.c_str());
            if (coef <= 0) p.error_at(t, "stoichiometric coefficient must be positive");
        }
        Token name = p.expect(Tok::Ident, "species name");
        coeffs[species_of(st, p, name)] += coef;
        if (!p.at(Tok::Plus)) break;
        p.take();
    }
    return Complex(std::move(coeffs));
}

void parse_reaction(ParseState& st, LineParser& p) {
    Complex lhs = parse_complex(st, p);
    bool reversible = false;
    if (p.at(Tok::RevArrow)) {
        reversible = true;
        p.take();
    } else {
        p.expect(Tok::Arrow, "'->' or '<->'");
    }
    Complex rhs = parse_complex(st, p);
    p.expect(Tok::Colon, "':' before rate name");
    std::string kf = p.expect(Tok::Ident, "rate name").text;
    if (reversible) {
        p.expect(Tok::Comma, "',' between forward and reverse rate names");
        std::string kr = p.expect(Tok::Ident, "reverse rate name").text;
        if (p.at(Tok::Bang)) p.error("kinetic annotations are not allowed on reversible shorthand");
        p.expect(Tok::End, "end of line");
        st.reactions.push_back({lhs, rhs, kf, std::nullopt});
        st.reactions.push_back({rhs, lhs, kr, std::nullopt});
        return;
    }
    std::optional<Complex> kin;
    if (p.at(Tok::Bang)) {
        p.take();
        Token kw = p.expect(Tok::Ident, "'kinetic'");
        if (kw.text != "kinetic") p.error_at(kw, "expected 'kinetic'");
        p.expect(Tok::Eq, "'='");
        kin = parse_complex(st, p);
    }
    p.expect(Tok::End, "end of line");
    st.reactions.push_back({lhs, rhs, kf, kin});
}

void parse_assignments(std::map<std::string, double>& into, LineParser& p, bool positive) {
    while (!p.at(Tok::End)) {
        Token name = p.expect(Tok::Ident, "name");
        p.expect(Tok::Eq, "'='");
        Token val = p.expect(Tok::Number, "number");
        double v = parse_real(p, val);
        if (positive && !(v > 0.0))
            throw Error(ErrorCode::NonPositiveParameter,
                        "line " + std::to_string(p.line()) + ": " + name.text + " = " + val.text);
        if (!positive && v < 0.0)
            throw Error(ErrorCode::NegativeState,
                        "line " + std::to_string(p.line()) + ": " + name.text + " = " + val.text);
        if (into.count(name.text)) p.error_at(name, "'" + name.text + "' assigned twice");
        into[name.text] = v;
        if (p.at(Tok::Comma) || p.at(Tok::Semi)) p.take();
    }
}

void parse_epi(ParseState& st, LineParser& p, int first_line) {
    (void)first_line;
    EpiDecl decl;
    Token kw = p.expect(Tok::Ident, "'infected'");
    if (kw.text != "infected") p.error_at(kw, "expected 'infected'");
    p.expect(Tok::Eq, "'='");
    while (p.at(Tok::Ident)) {
        Token t = p.take();
        species_of(st, p, t);
        decl.infected.push_back(t.text);
        if (p.at(Tok::Comma)) p.take();
    }
    if (decl.infected.empty()) p.error("infected list is empty");
    p.expect(Tok::Semi, "';'");
    Token kw2 = p.expect(Tok::Ident, "'susceptible'");
    if (kw2.text != "susceptible") p.error_at(kw2, "expected 'susceptible'");
    p.expect(Tok::Eq, "'='");
    Token s = p.expect(Tok::Ident, "species name");
    species_of(st, p, s);
    decl.susceptible = s.text;
    p.expect(Tok::End, "end of epi declaration");
    st.epi = decl;
}

}  // namespace

ReactionNetwork parse_network(std::string_view text) {
    ParseState st;
    enum class Section { None, Params, Reactions, Epi, Init } section = Section::None;
    bool have_header = false;
    bool have_reactions = false;
    // epi declarations may wrap over several lines; collected and parsed at the end
    std::string epi_text;
    int epi_line = 0;
    int epi_col_offset = 0;

    std::istringstream in{std::string(text)};
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        std::string line = raw.substr(0, raw.find('#'));
        auto toks = lex_line(line, lineno);
        if (toks.size() == 1) continue;

        LineParser p(toks, lineno);
        if (p.at(Tok::Ident)) {
            const std::string& w = p.peek().text;
            if (w == "species") {
                if (have_header) p.error("duplicate 'species' header");
                p.take();
                while (p.at(Tok::Ident)) {
                    Token t = p.take();
                    if (t.text == "species" || t.text == "params" || t.text == "reactions" ||
                        t.text == "epi" || t.text == "init")
                        p.error_at(t, "'" + t.text + "' is a reserved word");
                    if (st.index.count(t.text)) p.error_at(t, "species '" + t.text + "' declared twice");
                    st.index[t.text] = st.species.size();
                    st.species.push_back(t.text);
                    if (p.at(Tok::Comma)) p.take();
                }
                p.expect(Tok::End, "species name");
                if (st.species.empty()) p.error("no species declared");
                have_header = true;
                continue;
            }
            if (!have_header) p.error("file must start with a 'species' header");
            Section next = Section::None;
            if (w == "params") next = Section::Params;
            else if (w == "reactions") next = Section::Reactions;
            else if (w == "epi") next = Section::Epi;
            else if (w == "init") next = Section::Init;
            if (next != Section::None) {
                section = next;
                p.take();
                if (section == Section::Reactions) {
                    if (!p.at(Tok::End)) p.error("reactions start on the line after 'reactions'");
                    have_reactions = true;
                    continue;
                }
                if (section == Section::Epi) {
                    if (st.epi || !epi_text.empty()) p.error("duplicate 'epi' section");
                    epi_line = lineno;
                    epi_col_offset = p.peek().col - 1;
                    epi_text = line.substr(static_cast<std::size_t>(epi_col_offset));
                    continue;
                }
                if (p.at(Tok::End)) continue;
            }
        } else if (!have_header) {
            p.error("file must start with a 'species' header");
        }

        switch (section) {
        case Section::None: p.error("expected a section keyword (params, reactions, epi, init)");
        case Section::Params: parse_assignments(st.params, p, true); break;
        case Section::Init: parse_assignments(st.init, p, false); break;
        case Section::Reactions: parse_reaction(st, p); break;
        case Section::Epi:
            epi_text += " " + line;
            break;
        }
    }
    if (!have_header) throw SyntaxError(lineno + 1, 1, "missing 'species' header");
    if (!have_reactions) throw SyntaxError(lineno + 1, 1, "missing 'reactions' section");
    if (!epi_text.empty()) {
        LineParser p(lex_line(epi_text, epi_line), epi_line);
        parse_epi(st, p, epi_line);
    } else if (epi_line) {
        throw SyntaxError(epi_line, 1, "empty 'epi' section");
    }
    for (const auto& [k, v] : st.init)
        if (!st.index.count(k)) throw Error(ErrorCode::UndeclaredSpecies, "init: '" + k + "'");

    return ReactionNetwork(st.species, st.reactions, st.params, st.init, st.epi);
}

ReactionNetwork load_network(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(ErrorCode::InputError, "cannot open '" + path + "'");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_network(ss.str());
}

}  // namespace crnepi
