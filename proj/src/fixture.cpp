#include "modcrit/fixture.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "modcrit/cache.hpp"

namespace modcrit {

namespace {

/// Generic tree reader: atoms (runs without structural characters, trimmed),
/// lists [a, b, ...] and maps { key: value, ... }.
struct Node {
    enum class Kind { Atom, List, Map } kind = Kind::Atom;
    std::string atom;
    std::vector<Node> list;
    std::vector<std::pair<std::string, Node>> map;
    size_t line = 0, col = 0;

    const Node* find(const std::string& key) const {
        for (auto& [k, v] : map)
            if (k == key) return &v;
        return nullptr;
    }
};

struct Cursor {
    const std::string& s;
    size_t i = 0, line = 1, col = 1;

    bool done() const { return i >= s.size(); }
    char peek() const { return i < s.size() ? s[i] : '\0'; }
    void advance() {
        if (s[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    }
    void skip_ws() {
        while (!done()) {
            if (std::isspace(static_cast<unsigned char>(peek()))) {
                advance();
            } else if (peek() == '#') {
                while (!done() && peek() != '\n') advance();
            } else {
                break;
            }
        }
    }
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, col); }
    void expect(char c) {
        skip_ws();
        if (peek() != c) fail(std::string("expected '") + c + "'");
        advance();
    }
};

bool structural(char c) {
    return c == '{' || c == '}' || c == '[' || c == ']' || c == ':' || c == ',';
}

std::string read_atom_text(Cursor& cur) {
    cur.skip_ws();
    if (cur.peek() == '"') {
        cur.advance();
        std::string out;
        while (!cur.done() && cur.peek() != '"') {
            out.push_back(cur.peek());
            cur.advance();
        }
        if (cur.done()) cur.fail("unterminated string");
        cur.advance();
        return out;
    }
    std::string out;
    size_t last_nonspace = 0;
    while (!cur.done() && !structural(cur.peek()) && cur.peek() != '"' && cur.peek() != '\n' &&
           cur.peek() != '#') {
        out.push_back(cur.peek());
        if (!std::isspace(static_cast<unsigned char>(cur.peek()))) last_nonspace = out.size();
        cur.advance();
    }
    out.resize(last_nonspace);
    if (out.empty()) cur.fail("expected a value");
    return out;
}

std::string read_word(Cursor& cur) {
    cur.skip_ws();
    std::string out;
    while (!cur.done() && !structural(cur.peek()) && cur.peek() != '"' &&
           !std::isspace(static_cast<unsigned char>(cur.peek()))) {
        out.push_back(cur.peek());
        cur.advance();
    }
    if (out.empty()) cur.fail("expected a word");
    return out;
}

Node parse_node(Cursor& cur);

Node parse_list(Cursor& cur) {
    Node n;
    n.kind = Node::Kind::List;
    n.line = cur.line;
    n.col = cur.col;
    cur.expect('[');
    cur.skip_ws();
    if (cur.peek() == ']') {
        cur.advance();
        return n;
    }
    while (true) {
        n.list.push_back(parse_node(cur));
        cur.skip_ws();
        if (cur.peek() == ',') {
            cur.advance();
            cur.skip_ws();
            if (cur.peek() == ']') {  // trailing comma
                cur.advance();
                return n;
            }
            continue;
        }
        if (cur.peek() == ']') {
            cur.advance();
            return n;
        }
        cur.fail("expected ',' or ']' in list");
    }
}

Node parse_map(Cursor& cur) {
    Node n;
    n.kind = Node::Kind::Map;
    n.line = cur.line;
    n.col = cur.col;
    cur.expect('{');
    while (true) {
        cur.skip_ws();
        if (cur.peek() == '}') {
            cur.advance();
            return n;
        }
        std::string key = read_atom_text(cur);
        cur.expect(':');
        Node value = parse_node(cur);
        for (auto& [k, v] : n.map)
            if (k == key) cur.fail("duplicate key '" + key + "'");
        n.map.emplace_back(std::move(key), std::move(value));
        cur.skip_ws();
        if (cur.peek() == ',') cur.advance();
    }
}

Node parse_node(Cursor& cur) {
    cur.skip_ws();
    char c = cur.peek();
    if (c == '[') return parse_list(cur);
    if (c == '{') return parse_map(cur);
    Node n;
    n.kind = Node::Kind::Atom;
    n.line = cur.line;
    n.col = cur.col;
    n.atom = read_atom_text(cur);
    return n;
}

const Node& need(const Node& map, const std::string& key, Cursor& cur) {
    const Node* n = map.find(key);
    if (!n) throw ParseError("missing key '" + key + "'", map.line, map.col);
    return *n;
}

bool atom_bool(const Node& n) {
    if (n.atom == "true") return true;
    if (n.atom == "false") return false;
    throw ParseError("expected true/false, got '" + n.atom + "'", n.line, n.col);
}

std::vector<std::string> atom_list(const Node& n) {
    std::vector<std::string> out;
    for (auto& e : n.list) out.push_back(e.atom);
    return out;
}

std::vector<Polynomial> poly_list(const PolyRing& R, const Node& n) {
    std::vector<Polynomial> out;
    for (auto& e : n.list) {
        try {
            out.push_back(parse_polynomial(R, e.atom));
        } catch (const std::invalid_argument& ex) {
            throw ParseError(ex.what(), e.line, e.col);
        }
    }
    return out;
}

}  // namespace

const ModulePresentation* FixtureDocument::find_module(const std::string& label) const {
    for (auto& m : modules)
        if (m.label == label) return &m;
    return nullptr;
}

const EndomorphismSpec* FixtureDocument::find_endo(const std::string& label) const {
    for (auto& e : endos)
        if (e.label == label) return &e;
    return nullptr;
}

const MultiplicativeSet* FixtureDocument::find_multset(const std::string& label) const {
    for (auto& w : multsets)
        if (w.label == label) return &w;
    return nullptr;
}

const RingMapDecl* FixtureDocument::find_ringmap(const std::string& label) const {
    for (auto& g : ringmaps)
        if (g.label == label) return &g;
    return nullptr;
}

std::vector<const PrimeDecl*> FixtureDocument::candidate_primes(const std::string& name) const {
    for (auto& [tag, labels] : candidates) {
        if (tag != name) continue;
        std::vector<const PrimeDecl*> out;
        for (auto& l : labels) {
            const PrimeDecl* p = fixture.find_prime(l);
            if (p) out.push_back(p);
        }
        return out;
    }
    std::vector<const PrimeDecl*> out;
    for (auto& p : fixture.primes) out.push_back(&p);
    return out;
}

const std::string* FixtureDocument::expected(const std::string& key) const {
    for (auto& [k, v] : expectations)
        if (k == key) return &v;
    return nullptr;
}

FixtureDocument parse_fixture(const std::string& text, const std::string& path) {
    Cursor cur{text};
    FixtureDocument doc;
    doc.source_path = path;
    doc.digest = fnv1a64_hex(text);
    bool have_ring = false;
    std::set<std::string> labels;

    auto unique_label = [&](const std::string& label, size_t line, size_t col) {
        if (!labels.insert(label).second)
            throw ParseError("duplicate label '" + label + "'", line, col);
    };

    while (true) {
        cur.skip_ws();
        if (cur.done()) break;
        size_t sline = cur.line, scol = cur.col;
        std::string section = read_word(cur);

        if (section == "ring") {
            if (have_ring) throw ParseError("duplicate ring section", sline, scol);
            have_ring = true;
            Node n = parse_map(cur);
            PolyRing R;
            std::string field = need(n, "field", cur).atom;
            if (field == "QQ") {
                R.field.p = 0;
            } else if (field.rfind("GF(", 0) == 0 && field.back() == ')') {
                unsigned long p = std::stoul(field.substr(3, field.size() - 4));
                if (!is_prime_u32(static_cast<uint32_t>(p)))
                    throw ParseError("field characteristic must be prime", n.line, n.col);
                R.field.p = static_cast<uint32_t>(p);
            } else {
                throw ParseError("field must be QQ or GF(p)", n.line, n.col);
            }
            R.vars = atom_list(need(n, "vars", cur));
            try {
                R.order = order_from_string(need(n, "order", cur).atom);
            } catch (const std::invalid_argument& ex) {
                throw ParseError(ex.what(), n.line, n.col);
            }
            std::vector<Polynomial> rels = poly_list(R, need(n, "relations", cur));
            doc.fixture.ctx = RingCtx(R, rels);

            if (const Node* ap = n.find("ass_primes")) {
                for (auto& e : ap->list) {
                    PrimeDecl P;
                    P.section = PrimeDecl::Section::Ass;
                    P.label = need(e, "label", cur).atom;
                    unique_label(P.label, e.line, e.col);
                    P.ideal = IdealHandle::reduced(doc.fixture.ctx,
                                                   poly_list(R, need(e, "gens", cur)));
                    P.minimal = atom_bool(need(e, "minimal", cur));
                    P.maximal = atom_bool(need(e, "maximal", cur));
                    doc.fixture.primes.push_back(std::move(P));
                }
            }
            if (const Node* mx = n.find("max_ideals")) {
                for (auto& [label, gens] : mx->map) {
                    PrimeDecl P;
                    P.section = PrimeDecl::Section::Max;
                    P.label = label;
                    unique_label(label, mx->line, mx->col);
                    P.ideal = IdealHandle::reduced(doc.fixture.ctx, poly_list(R, gens));
                    P.minimal = false;
                    P.maximal = true;
                    doc.fixture.primes.push_back(std::move(P));
                }
            }
            if (const Node* ex = n.find("extra_primes")) {
                for (auto& [label, gens] : ex->map) {
                    PrimeDecl P;
                    P.section = PrimeDecl::Section::Extra;
                    P.label = label;
                    unique_label(label, ex->line, ex->col);
                    P.ideal = IdealHandle::reduced(doc.fixture.ctx, poly_list(R, gens));
                    doc.fixture.primes.push_back(std::move(P));
                }
            }
            if (const Node* fl = n.find("flags")) {
                FixtureFlags& flags = doc.fixture.flags;
                for (auto& [k, v] : fl->map) {
                    if (k == "reduced") flags.reduced = atom_bool(v);
                    else if (k == "connected") flags.connected = atom_bool(v);
                    else if (k == "no_embedded_primes") flags.no_embedded_primes = atom_bool(v);
                    else if (k == "ass_complete") flags.ass_complete = atom_bool(v);
                    else if (k == "equidimensional") flags.equidimensional = atom_bool(v);
                    else if (k == "codim") flags.codim = std::stoi(v.atom);
                    else throw ParseError("unknown flag '" + k + "'", v.line, v.col);
                }
            }
            continue;
        }

        if (!have_ring) throw ParseError("the ring section must come first", sline, scol);
        const PolyRing& R = doc.fixture.ring();

        if (section == "module") {
            std::string label = read_word(cur);
            unique_label(label, sline, scol);
            Node n = parse_map(cur);
            ModulePresentation M;
            M.label = label;
            M.rank = std::stoul(need(n, "ambient_rank", cur).atom);
            for (auto& col : need(n, "relations", cur).list) {
                if (col.list.size() != M.rank)
                    throw ParseError("relation column length differs from ambient_rank", col.line,
                                     col.col);
                VecPoly v = VecPoly::zero(M.rank);
                for (size_t i = 0; i < M.rank; ++i) {
                    try {
                        v.c[i] = doc.fixture.ctx.reduce(parse_polynomial(R, col.list[i].atom));
                    } catch (const std::invalid_argument& ex) {
                        throw ParseError(ex.what(), col.list[i].line, col.list[i].col);
                    }
                }
                if (!v.is_zero()) M.relations.push_back(std::move(v));
            }
            doc.modules.push_back(std::move(M));
        } else if (section == "endo") {
            std::string label = read_word(cur);
            unique_label(label, sline, scol);
            Node n = parse_map(cur);
            EndomorphismSpec endo;
            endo.label = label;
            endo.images = poly_list(R, need(n, "images", cur));
            if (endo.images.size() != R.nvars())
                throw ParseError("endo needs one image per variable", n.line, n.col);
            if (const Node* f = n.find("frobenius")) endo.frobenius = atom_bool(*f);
            if (const Node* e = n.find("e")) endo.e = static_cast<uint32_t>(std::stoul(e->atom));
            doc.endos.push_back(std::move(endo));
        } else if (section == "multset") {
            std::string label = read_word(cur);
            unique_label(label, sline, scol);
            Node n = parse_map(cur);
            MultiplicativeSet W;
            W.label = label;
            if (const Node* g = n.find("gens")) W.gens = poly_list(R, *g);
            if (const Node* f = n.find("full_nzd")) W.full_nzd = atom_bool(*f);
            if (const Node* z = n.find("contains_zero")) W.contains_zero = atom_bool(*z);
            doc.multsets.push_back(std::move(W));
        } else if (section == "ringmap") {
            std::string label = read_word(cur);
            unique_label(label, sline, scol);
            Node n = parse_map(cur);
            RingMapDecl g;
            g.label = label;
            g.base_vars = atom_list(need(n, "base_vars", cur));
            PolyRing base;
            base.field = R.field;
            base.vars = g.base_vars;
            base.order = MonomialOrder::grevlex();
            if (const Node* br = n.find("base_relations")) g.base_relations = poly_list(base, *br);
            g.images = poly_list(R, need(n, "images", cur));
            for (auto& b : need(n, "basis", cur).list) {
                Polynomial p;
                try {
                    p = parse_polynomial(R, b.atom);
                } catch (const std::invalid_argument& ex) {
                    throw ParseError(ex.what(), b.line, b.col);
                }
                if (p.size() != 1 || !p.leading().c.is_one())
                    throw ParseError("basis entries must be monomials", b.line, b.col);
                g.basis.push_back(p.leading().m);
            }
            doc.ringmaps.push_back(std::move(g));
        } else if (section == "candidates") {
            std::string label = read_word(cur);
            Node n = parse_map(cur);
            std::vector<std::string> primes = atom_list(need(n, "primes", cur));
            for (auto& p : primes)
                if (!doc.fixture.find_prime(p))
                    throw ParseError("candidate references unknown prime '" + p + "'", n.line,
                                     n.col);
            doc.candidates.emplace_back(label, std::move(primes));
        } else if (section == "expect") {
            Node n = parse_map(cur);
            for (auto& [k, v] : n.map) doc.expectations.emplace_back(k, v.atom);
        } else {
            throw ParseError("unknown section '" + section + "'", sline, scol);
        }
    }
    if (!have_ring) throw ParseError("missing ring section", 1, 1);
    return doc;
}

FixtureDocument load_fixture(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open fixture file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_fixture(ss.str(), path);
}

namespace {

std::string bool_str(bool b) { return b ? "true" : "false"; }

}  // namespace

std::string serialize_fixture(const FixtureDocument& doc) {
    const RingFixture& F = doc.fixture;
    const PolyRing& R = F.ring();
    std::ostringstream os;
    os << "ring {\n";
    os << "  field: " << (R.field.p ? "GF(" + std::to_string(R.field.p) + ")" : "QQ") << "\n";
    os << "  vars: [";
    for (size_t i = 0; i < R.vars.size(); ++i) os << (i ? ", " : "") << R.vars[i];
    os << "]\n";
    os << "  order: " << order_to_string(R.order) << "\n";
    os << "  relations: [";
    for (size_t i = 0; i < F.ctx.ideal.size(); ++i)
        os << (i ? ", " : "") << to_string(R, F.ctx.ideal[i]);
    os << "]\n";
    os << "  ass_primes: [\n";
    for (auto& P : F.primes) {
        if (P.section != PrimeDecl::Section::Ass) continue;
        os << "    { label: " << P.label << ", gens: [";
        for (size_t i = 0; i < P.ideal.gens().size(); ++i)
            os << (i ? ", " : "") << to_string(R, P.ideal.gens()[i]);
        os << "], minimal: " << bool_str(P.minimal) << ", maximal: " << bool_str(P.maximal)
           << " },\n";
    }
    os << "  ]\n";
    os << "  max_ideals: {\n";
    for (auto& P : F.primes) {
        if (P.section != PrimeDecl::Section::Max) continue;
        os << "    " << P.label << ": [";
        for (size_t i = 0; i < P.ideal.gens().size(); ++i)
            os << (i ? ", " : "") << to_string(R, P.ideal.gens()[i]);
        os << "],\n";
    }
    os << "  }\n";
    os << "  extra_primes: {\n";
    for (auto& P : F.primes) {
        if (P.section != PrimeDecl::Section::Extra) continue;
        os << "    " << P.label << ": [";
        for (size_t i = 0; i < P.ideal.gens().size(); ++i)
            os << (i ? ", " : "") << to_string(R, P.ideal.gens()[i]);
        os << "],\n";
    }
    os << "  }\n";
    os << "  flags: { reduced: " << bool_str(F.flags.reduced)
       << ", connected: " << bool_str(F.flags.connected)
       << ", no_embedded_primes: " << bool_str(F.flags.no_embedded_primes)
       << ", ass_complete: " << bool_str(F.flags.ass_complete)
       << ", equidimensional: " << bool_str(F.flags.equidimensional);
    if (F.flags.codim >= 0) os << ", codim: " << F.flags.codim;
    os << " }\n";
    os << "}\n";

    for (auto& M : doc.modules) {
        os << "module " << M.label << " { ambient_rank: " << M.rank << ", relations: [";
        for (size_t c = 0; c < M.relations.size(); ++c) {
            os << (c ? ", " : "") << "[";
            for (size_t i = 0; i < M.rank; ++i)
                os << (i ? ", " : "") << to_string(R, M.relations[c].c[i]);
            os << "]";
        }
        os << "] }\n";
    }
    for (auto& e : doc.endos) {
        os << "endo " << e.label << " { images: [";
        for (size_t i = 0; i < e.images.size(); ++i)
            os << (i ? ", " : "") << to_string(R, e.images[i]);
        os << "]";
        if (e.frobenius) os << ", frobenius: true, e: " << e.e;
        os << " }\n";
    }
    for (auto& W : doc.multsets) {
        os << "multset " << W.label << " { gens: [";
        for (size_t i = 0; i < W.gens.size(); ++i)
            os << (i ? ", " : "") << to_string(R, W.gens[i]);
        os << "]";
        if (W.full_nzd) os << ", full_nzd: true";
        if (W.contains_zero) os << ", contains_zero: true";
        os << " }\n";
    }
    for (auto& g : doc.ringmaps) {
        PolyRing base;
        base.field = R.field;
        base.vars = g.base_vars;
        base.order = MonomialOrder::grevlex();
        os << "ringmap " << g.label << " { base_vars: [";
        for (size_t i = 0; i < g.base_vars.size(); ++i) os << (i ? ", " : "") << g.base_vars[i];
        os << "], base_relations: [";
        for (size_t i = 0; i < g.base_relations.size(); ++i)
            os << (i ? ", " : "") << to_string(base, g.base_relations[i]);
        os << "], images: [";
        for (size_t i = 0; i < g.images.size(); ++i)
            os << (i ? ", " : "") << to_string(R, g.images[i]);
        os << "], basis: [";
        for (size_t i = 0; i < g.basis.size(); ++i)
            os << (i ? ", " : "")
               << to_string(R, Polynomial::term(R, g.basis[i], Scalar::one(R.field)));
        os << "] }\n";
    }
    for (auto& [tag, labels] : doc.candidates) {
        os << "candidates " << tag << " { primes: [";
        for (size_t i = 0; i < labels.size(); ++i) os << (i ? ", " : "") << labels[i];
        os << "] }\n";
    }
    if (!doc.expectations.empty()) {
        os << "expect {\n";
        for (auto& [k, v] : doc.expectations) os << "  \"" << k << "\": " << v << ",\n";
        os << "}\n";
    }
    return os.str();
}

}  // namespace modcrit
