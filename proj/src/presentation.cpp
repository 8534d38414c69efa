#include "qhcalc/presentation.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace qhcalc {

int Presentation::vertex_index(const std::string& label) const {
    for (int i = 0; i < num_vertices(); ++i)
        if (vertices[i] == label) return i;
    return -1;
}

int Presentation::word_src(const std::vector<int>& word, int fallback) const {
    return word.empty() ? fallback : arrows[word.front()].src;
}

int Presentation::word_dst(const std::vector<int>& word, int fallback) const {
    return word.empty() ? fallback : arrows[word.back()].dst;
}

int Presentation::word_degree(const std::vector<int>& word) const {
    int d = 0;
    for (int a : word) d += arrows[a].degree;
    return d;
}

bool Presentation::word_composable(const std::vector<int>& word) const {
    for (size_t i = 0; i + 1 < word.size(); ++i)
        if (arrows[word[i]].dst != arrows[word[i + 1]].src) return false;
    return true;
}

void Presentation::validate() const {
    std::set<std::string> seen;
    for (const auto& v : vertices)
        if (!seen.insert(v).second) throw ParseError("duplicate vertex label: " + v);
    std::set<std::string> anames;
    for (const auto& a : arrows) {
        if (a.src < 0 || a.src >= num_vertices() || a.dst < 0 || a.dst >= num_vertices())
            throw ParseError("arrow endpoint out of range: " + a.name);
        if (a.degree <= 0) throw NotPositivelyGraded("arrow of degree <= 0: " + a.name);
        if (!anames.insert(a.name).second) throw ParseError("duplicate arrow name: " + a.name);
    }
    for (const auto& r : relations) {
        if (r.terms.empty()) throw ParseError("empty relation");
        for (const auto& t : r.terms) {
            if (t.word.empty()) throw ParseError("relation term with empty path");
            for (int a : t.word)
                if (a < 0 || a >= static_cast<int>(arrows.size()))
                    throw ParseError("relation uses unknown arrow");
            if (!word_composable(t.word)) throw ParseError("relation term is not a composable path");
            if (word_src(t.word) != r.src || word_dst(t.word) != r.dst)
                throw ParseError("relation mixes source/target vertices");
            if (word_degree(t.word) != r.degree)
                throw ParseError("relation is not homogeneous in degree");
        }
    }
}

namespace {

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

[[noreturn]] void fail(int line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
}

} // namespace

Presentation parse_presentation(const std::string& text) {
    Presentation p;
    bool field_set = false;
    std::istringstream is(text);
    std::string raw;
    int lineno = 0;
    std::vector<std::pair<int, std::string>> relation_lines;
    while (std::getline(is, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        std::string line = hash == std::string::npos ? raw : raw.substr(0, hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        const std::string& kw = toks[0];
        if (kw == "field") {
            if (toks.size() == 2 && toks[1] == "Q")
                p.field = Field::rationals();
            else if (toks.size() == 3 && toks[1] == "Fp") {
                try {
                    p.field = Field::prime(std::stoul(toks[2]));
                } catch (const Error&) {
                    fail(lineno, "bad prime: " + toks[2]);
                } catch (...) {
                    fail(lineno, "bad prime: " + toks[2]);
                }
            } else
                fail(lineno, "expected 'field Q' or 'field Fp <prime>'");
            field_set = true;
        } else if (kw == "vertices") {
            if (toks.size() < 2) fail(lineno, "vertices line needs at least one label");
            p.vertices.assign(toks.begin() + 1, toks.end());
        } else if (kw == "arrow") {
            if (toks.size() != 4 && toks.size() != 5) fail(lineno, "expected: arrow <name> <src> <dst> [degree]");
            Arrow a;
            a.name = toks[1];
            a.src = p.vertex_index(toks[2]);
            a.dst = p.vertex_index(toks[3]);
            if (a.src < 0) fail(lineno, "unknown vertex: " + toks[2]);
            if (a.dst < 0) fail(lineno, "unknown vertex: " + toks[3]);
            if (toks.size() == 5) {
                try {
                    a.degree = std::stoi(toks[4]);
                } catch (...) {
                    fail(lineno, "bad degree: " + toks[4]);
                }
            }
            if (a.degree <= 0) fail(lineno, "arrow degree must be >= 1");
            p.arrows.push_back(a);
        } else if (kw == "relation") {
            relation_lines.emplace_back(lineno, line.substr(line.find("relation") + 8));
        } else {
            fail(lineno, "unknown directive: " + kw);
        }
    }
    if (!field_set) p.field = Field::rationals();
    if (p.vertices.empty()) throw ParseError("no vertices declared");

    auto arrow_index = [&](const std::string& name) {
        for (size_t i = 0; i < p.arrows.size(); ++i)
            if (p.arrows[i].name == name) return static_cast<int>(i);
        return -1;
    };

    for (auto& [ln, body] : relation_lines) {
        // terms separated by '+'; term = coeff*path or bare path
        Relation rel;
        std::string term;
        std::vector<std::string> terms;
        std::istringstream ts(body);
        std::string tok;
        std::string cur;
        while (ts >> tok) {
            if (tok == "+") {
                if (cur.empty()) fail(ln, "dangling '+'");
                terms.push_back(cur);
                cur.clear();
            } else {
                if (!cur.empty()) fail(ln, "terms must be separated by '+'");
                cur = tok;
            }
        }
        if (cur.empty()) fail(ln, "empty relation");
        terms.push_back(cur);
        for (const auto& t : terms) {
            PathTerm pt;
            std::string pathpart = t;
            auto star = t.find('*');
            if (star != std::string::npos) {
                try {
                    pt.coeff = p.field.from_string(t.substr(0, star));
                } catch (const Error&) {
                    fail(ln, "bad coefficient in term: " + t);
                }
                pathpart = t.substr(star + 1);
            } else {
                pt.coeff = Scalar(1);
            }
            std::istringstream ps(pathpart);
            std::string an;
            while (std::getline(ps, an, '.')) {
                int ai = arrow_index(an);
                if (ai < 0) fail(ln, "unknown arrow in relation: " + an);
                pt.word.push_back(ai);
            }
            if (pt.word.empty()) fail(ln, "empty path in relation");
            if (!p.word_composable(pt.word)) fail(ln, "non-composable path in relation");
            rel.terms.push_back(std::move(pt));
        }
        rel.src = p.word_src(rel.terms[0].word);
        rel.dst = p.word_dst(rel.terms[0].word);
        rel.degree = p.word_degree(rel.terms[0].word);
        for (const auto& t : rel.terms) {
            if (p.word_src(t.word) != rel.src || p.word_dst(t.word) != rel.dst)
                fail(ln, "relation mixes source/target vertices");
            if (p.word_degree(t.word) != rel.degree) fail(ln, "relation is not homogeneous in degree");
        }
        p.relations.push_back(std::move(rel));
    }
    p.validate();
    return p;
}

Presentation load_presentation(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_presentation(ss.str());
}

std::string format_presentation(const Presentation& p) {
    std::ostringstream os;
    os << "field " << (p.field.is_rationals() ? "Q" : "Fp " + std::to_string(p.field.characteristic()))
       << "\n";
    os << "vertices";
    for (const auto& v : p.vertices) os << " " << v;
    os << "\n";
    for (const auto& a : p.arrows) {
        os << "arrow " << a.name << " " << p.vertices[a.src] << " " << p.vertices[a.dst];
        if (a.degree != 1) os << " " << a.degree;
        os << "\n";
    }
    for (const auto& r : p.relations) {
        os << "relation ";
        for (size_t i = 0; i < r.terms.size(); ++i) {
            if (i) os << " + ";
            os << Field::to_string(r.terms[i].coeff) << "*";
            for (size_t k = 0; k < r.terms[i].word.size(); ++k) {
                if (k) os << ".";
                os << p.arrows[r.terms[i].word[k]].name;
            }
        }
        os << "\n";
    }
    return os.str();
}

} // namespace qhcalc
