#include "tlab/tlx.hpp"

#include <algorithm>
#include <sstream>

namespace tlab {

namespace {

[[noreturn]] void bail(size_t line_no, const std::string& msg) {
    fail_input("line " + std::to_string(line_no) + ": " + msg);
}

std::string strip(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

int parse_int(const std::string& s, size_t line_no, const std::string& what) {
    try {
        size_t used = 0;
        int v = std::stoi(s, &used);
        if (used != s.size()) bail(line_no, "trailing junk in " + what);
        return v;
    } catch (const Error&) {
        throw;
    } catch (...) {
        bail(line_no, "expected an integer for " + what + ", got \"" + s + "\"");
    }
}

// "RxC" with nonnegative parts
std::pair<int, int> parse_dims(const std::string& s, size_t line_no) {
    size_t x = s.find('x');
    if (x == std::string::npos || x == 0 || x + 1 >= s.size())
        bail(line_no, "matrix dims must look like ROWSxCOLS, got \"" + s + "\"");
    int r = parse_int(s.substr(0, x), line_no, "matrix rows");
    int c = parse_int(s.substr(x + 1), line_no, "matrix cols");
    if (r < 0 || c < 0) bail(line_no, "matrix dims must be nonnegative");
    return {r, c};
}

// the bracketed payload of a matrix or element line
std::string bracket_payload(const std::string& line, size_t line_no) {
    size_t open = line.find('[');
    size_t close = line.rfind(']');
    if (open == std::string::npos || close == std::string::npos || close < open)
        bail(line_no, "expected a [ ... ] payload");
    if (strip(line.substr(close + 1)) != "") bail(line_no, "trailing junk after ']'");
    return line.substr(open + 1, close - open - 1);
}

std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : s) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(cur);
    return out;
}

GRMatrix parse_matrix(const GroupSpec& spec, int rows, int cols, const std::string& payload,
                      size_t line_no) {
    GRMatrix m(spec, rows, cols);
    if (strip(payload).empty()) {
        if (rows != 0 && cols != 0)
            bail(line_no, "empty payload for a " + std::to_string(rows) + "x" +
                              std::to_string(cols) + " matrix");
        return m;
    }
    std::vector<std::string> row_text = split_on(payload, ';');
    if (int(row_text.size()) != rows)
        bail(line_no, "expected " + std::to_string(rows) + " rows, got " +
                          std::to_string(row_text.size()));
    for (int i = 0; i < rows; ++i) {
        std::vector<std::string> cells = split_on(row_text[size_t(i)], ',');
        if (int(cells.size()) != cols)
            bail(line_no, "row " + std::to_string(i) + ": expected " + std::to_string(cols) +
                              " entries, got " + std::to_string(cells.size()));
        for (int j = 0; j < cols; ++j) {
            try {
                m.set(i, j, parse_element(spec, strip(cells[size_t(j)])));
            } catch (const Error& e) {
                bail(line_no, std::string("entry (") + std::to_string(i) + "," +
                                  std::to_string(j) + "): " + e.what());
            }
        }
    }
    return m;
}

std::string emit_matrix(const GRMatrix& m) {
    std::ostringstream out;
    out << m.rows() << "x" << m.cols() << " [";
    for (int i = 0; i < m.rows(); ++i) {
        if (i > 0) out << " ;";
        for (int j = 0; j < m.cols(); ++j) {
            out << (j > 0 ? ", " : " ");
            out << m.at(i, j).str();
        }
    }
    out << (m.rows() * m.cols() > 0 ? " ]" : "]");
    return out.str();
}

const char* kind_name(DoubleKind k) {
    switch (k) {
        case DoubleKind::Trivial: return "trivial";
        case DoubleKind::Twisted: return "twisted";
        default: return "generalised";
    }
}

DoubleKind kind_from(const std::string& s, size_t line_no) {
    if (s == "trivial") return DoubleKind::Trivial;
    if (s == "twisted") return DoubleKind::Twisted;
    if (s == "generalised") return DoubleKind::Generalised;
    bail(line_no, "unknown double kind \"" + s + "\"");
}

struct BlockLine {
    int degree;
    GRMatrix m;
};

// shared reader for `d I RxC [...]`, `f I RxC [...]`, `p I RxC [...]`
BlockLine read_block_line(const GroupSpec& spec, const std::vector<std::string>& toks,
                          const std::string& line, size_t line_no) {
    if (toks.size() < 3) bail(line_no, "expected `" + toks[0] + " DEGREE ROWSxCOLS [ ... ]`");
    int degree = parse_int(toks[1], line_no, "degree");
    if (degree < 0) bail(line_no, "degree must be nonnegative");
    auto [r, c] = parse_dims(toks[2], line_no);
    GRMatrix m = parse_matrix(spec, r, c, bracket_payload(line, line_no), line_no);
    return {degree, std::move(m)};
}

}  // namespace

const BasedComplex& TLXDocument::complex(const std::string& name) const {
    for (const auto& e : complexes)
        if (e.name == name) return e.c;
    fail_input("no complex named \"" + name + "\"");
}

ChainMap TLXDocument::map(const std::string& name) const {
    for (const auto& e : maps) {
        if (e.name != name) continue;
        const BasedComplex& s = complex(e.src);
        const BasedComplex& t = complex(e.tgt);
        int hi = std::max(s.top(), t.top());
        std::vector<GRMatrix> blocks;
        for (int i = 0; i <= hi; ++i) blocks.emplace_back(group, t.rank(i), s.rank(i));
        for (const auto& [deg, m] : e.blocks) {
            require(deg <= hi, ErrKind::Input,
                    "map \"" + name + "\": block degree " + std::to_string(deg) +
                        " beyond both complexes");
            require(m.rows() == t.rank(deg) && m.cols() == s.rank(deg), ErrKind::Input,
                    "map \"" + name + "\": block " + std::to_string(deg) +
                        " has the wrong shape");
            blocks[size_t(deg)] = m;
        }
        ChainMap f{s, t, std::move(blocks)};
        f.validate();
        return f;
    }
    fail_input("no map named \"" + name + "\"");
}

DualityPair TLXDocument::duality(const std::string& name, int t_cap) const {
    for (const auto& e : dualities) {
        if (e.name != name) continue;
        const BasedComplex& c = complex(e.complex);
        BasedComplex dc = dual_complex(c, e.n);
        std::vector<GRMatrix> blocks;
        for (int i = 0; i <= e.n; ++i) blocks.emplace_back(group, c.rank(i), dc.rank(i));
        for (const auto& [deg, m] : e.blocks) {
            require(deg <= e.n, ErrKind::Input,
                    "duality \"" + name + "\": block degree beyond n");
            require(m.rows() == c.rank(deg) && m.cols() == dc.rank(deg), ErrKind::Input,
                    "duality \"" + name + "\": block " + std::to_string(deg) +
                        " has the wrong shape");
            blocks[size_t(deg)] = m;
        }
        ChainMap p{std::move(dc), c, std::move(blocks)};
        p.validate();
        return make_duality_pair(c, e.n, p, t_cap);
    }
    fail_input("no duality named \"" + name + "\"");
}

DoubleModel TLXDocument::build_double(const std::string& name, int t_cap) const {
    for (const auto& e : doubles) {
        if (e.name != name) continue;
        const BasedComplex& a = complex(e.base);
        ThickeningModel t = e.basep.empty()
                                ? make_thickening(a, e.n)
                                : make_thickening(a, e.n, duality(e.basep, t_cap).P, t_cap);
        switch (e.kind) {
            case DoubleKind::Trivial:
                require(e.alpha.empty() && !e.u.has_value(), ErrKind::Input,
                        "double \"" + name + "\": trivial kind takes no gluing data");
                return build_trivial_double(t, t_cap);
            case DoubleKind::Twisted: {
                require(!e.alpha.empty(), ErrKind::Input,
                        "double \"" + name + "\": twisted kind needs an alpha map");
                require(!e.u.has_value(), ErrKind::Input,
                        "double \"" + name + "\": twisted kind takes no u");
                return build_twisted_double(t, map(e.alpha), t_cap);
            }
            default: {
                ChainMap al = e.alpha.empty() ? identity_map(t.a) : map(e.alpha);
                WhElement uu =
                    e.u ? WhElement::from_unit(*e.u) : WhElement::zero(group);
                return build_generalised_double(t, al, uu, t_cap);
            }
        }
    }
    fail_input("no double named \"" + name + "\"");
}

TLXDocument parse_tlx(const std::string& text) {
    std::vector<std::pair<size_t, std::string>> lines;
    {
        std::istringstream in(text);
        std::string raw;
        size_t no = 0;
        while (std::getline(in, raw)) {
            ++no;
            size_t hash = raw.find('#');
            if (hash != std::string::npos) raw = raw.substr(0, hash);
            std::string s = strip(raw);
            if (!s.empty()) lines.emplace_back(no, std::move(s));
        }
    }
    require(!lines.empty(), ErrKind::Input, "empty document");

    TLXDocument doc;
    size_t at = 0;

    {
        auto [no, line] = lines[at];
        std::vector<std::string> toks = split_ws(line);
        if (toks.empty() || toks[0] != "group") bail(no, "document must start with a group line");
        int m = -1, t = -1, ws = 1, wt = 1;
        for (size_t i = 1; i < toks.size(); ++i) {
            size_t eq = toks[i].find('=');
            if (eq == std::string::npos) bail(no, "group fields look like key=value");
            std::string key = toks[i].substr(0, eq);
            int val = parse_int(toks[i].substr(eq + 1), no, "group field " + key);
            if (key == "m")
                m = val;
            else if (key == "t")
                t = val;
            else if (key == "ws")
                ws = val;
            else if (key == "wt")
                wt = val;
            else
                bail(no, "unknown group field \"" + key + "\"");
        }
        if (m < 1) bail(no, "group needs m >= 1");
        if (t != 0 && t != 1) bail(no, "group needs t=0 or t=1");
        doc.group = GroupSpec{m, t == 1, ws, wt};
        try {
            doc.group.validate();
        } catch (const Error& e) {
            bail(no, e.what());
        }
        ++at;
    }

    auto known = [&doc](const std::string& name) {
        for (const auto& e : doc.complexes)
            if (e.name == name) return true;
        for (const auto& e : doc.maps)
            if (e.name == name) return true;
        for (const auto& e : doc.dualities)
            if (e.name == name) return true;
        for (const auto& e : doc.doubles)
            if (e.name == name) return true;
        return false;
    };

    while (at < lines.size()) {
        auto [no, line] = lines[at];
        std::vector<std::string> toks = split_ws(line);
        if (toks.size() != 2) bail(no, "expected `complex|map|duality|double NAME`");
        const std::string& section = toks[0];
        const std::string& name = toks[1];
        if (known(name)) bail(no, "duplicate name \"" + name + "\"");
        ++at;

        std::vector<std::pair<size_t, std::string>> body;
        bool closed = false;
        while (at < lines.size()) {
            if (lines[at].second == "end") {
                closed = true;
                ++at;
                break;
            }
            body.push_back(lines[at]);
            ++at;
        }
        if (!closed) bail(lines.back().first, "section \"" + name + "\" is missing `end`");

        if (section == "complex") {
            std::vector<int> ranks;
            bool saw_ranks = false;
            std::vector<std::pair<int, GRMatrix>> ds;
            for (const auto& [bno, bline] : body) {
                std::vector<std::string> bt = split_ws(bline);
                if (bt[0] == "ranks") {
                    if (saw_ranks) bail(bno, "duplicate ranks line");
                    saw_ranks = true;
                    for (size_t i = 1; i < bt.size(); ++i) {
                        int r = parse_int(bt[i], bno, "rank");
                        if (r < 0) bail(bno, "ranks must be nonnegative");
                        ranks.push_back(r);
                    }
                    if (ranks.empty()) bail(bno, "ranks line needs at least one value");
                } else if (bt[0] == "d") {
                    BlockLine b = read_block_line(doc.group, bt, bline, bno);
                    if (b.degree < 1) bail(bno, "differential degrees start at 1");
                    ds.emplace_back(b.degree, std::move(b.m));
                } else {
                    bail(bno, "unknown complex field \"" + bt[0] + "\"");
                }
            }
            if (!saw_ranks) bail(no, "complex \"" + name + "\" needs a ranks line");
            int top = int(ranks.size()) - 1;
            std::vector<GRMatrix> diffs;
            for (int i = 1; i <= top; ++i)
                diffs.emplace_back(doc.group, ranks[size_t(i - 1)], ranks[size_t(i)]);
            for (auto& [deg, m] : ds) {
                if (deg > top) bail(no, "complex \"" + name + "\": differential beyond top degree");
                if (m.rows() != ranks[size_t(deg - 1)] || m.cols() != ranks[size_t(deg)])
                    bail(no, "complex \"" + name + "\": d " + std::to_string(deg) +
                                 " has the wrong shape");
                diffs[size_t(deg - 1)] = std::move(m);
            }
            BasedComplex c;
            try {
                c = make_complex(doc.group, std::move(ranks), std::move(diffs));
            } catch (const Error& e) {
                bail(no, "complex \"" + name + "\": " + e.what());
            }
            doc.complexes.push_back(TLXComplex{name, std::move(c)});
        } else if (section == "map") {
            TLXMap m;
            m.name = name;
            for (const auto& [bno, bline] : body) {
                std::vector<std::string> bt = split_ws(bline);
                if (bt[0] == "src" && bt.size() == 2) {
                    m.src = bt[1];
                } else if (bt[0] == "tgt" && bt.size() == 2) {
                    m.tgt = bt[1];
                } else if (bt[0] == "f") {
                    BlockLine b = read_block_line(doc.group, bt, bline, bno);
                    if (!b.m.is_zero()) m.blocks.emplace_back(b.degree, std::move(b.m));
                } else {
                    bail(bno, "unknown map field \"" + bt[0] + "\"");
                }
            }
            if (m.src.empty() || m.tgt.empty())
                bail(no, "map \"" + name + "\" needs src and tgt");
            std::sort(m.blocks.begin(), m.blocks.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            doc.maps.push_back(std::move(m));
        } else if (section == "duality") {
            TLXDuality d;
            d.name = name;
            bool saw_n = false;
            for (const auto& [bno, bline] : body) {
                std::vector<std::string> bt = split_ws(bline);
                if (bt[0] == "complex" && bt.size() == 2) {
                    d.complex = bt[1];
                } else if (bt[0] == "n" && bt.size() == 2) {
                    d.n = parse_int(bt[1], bno, "n");
                    saw_n = true;
                } else if (bt[0] == "p") {
                    BlockLine b = read_block_line(doc.group, bt, bline, bno);
                    if (!b.m.is_zero()) d.blocks.emplace_back(b.degree, std::move(b.m));
                } else {
                    bail(bno, "unknown duality field \"" + bt[0] + "\"");
                }
            }
            if (d.complex.empty() || !saw_n)
                bail(no, "duality \"" + name + "\" needs complex and n");
            std::sort(d.blocks.begin(), d.blocks.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            doc.dualities.push_back(std::move(d));
        } else if (section == "double") {
            TLXDoubleDecl d;
            d.name = name;
            bool saw_kind = false, saw_n = false;
            for (const auto& [bno, bline] : body) {
                std::vector<std::string> bt = split_ws(bline);
                if (bt[0] == "kind" && bt.size() == 2) {
                    d.kind = kind_from(bt[1], bno);
                    saw_kind = true;
                } else if (bt[0] == "base" && bt.size() == 2) {
                    d.base = bt[1];
                } else if (bt[0] == "n" && bt.size() == 2) {
                    d.n = parse_int(bt[1], bno, "n");
                    saw_n = true;
                } else if (bt[0] == "alpha" && bt.size() == 2) {
                    d.alpha = bt[1];
                } else if (bt[0] == "basep" && bt.size() == 2) {
                    d.basep = bt[1];
                } else if (bt[0] == "u") {
                    try {
                        d.u = parse_element(doc.group, strip(bracket_payload(bline, bno)));
                    } catch (const Error& e) {
                        bail(bno, e.what());
                    }
                } else {
                    bail(bno, "unknown double field \"" + bt[0] + "\"");
                }
            }
            if (!saw_kind || d.base.empty() || !saw_n)
                bail(no, "double \"" + name + "\" needs kind, base, and n");
            doc.doubles.push_back(std::move(d));
        } else {
            bail(no, "unknown section \"" + section + "\"");
        }
    }

    // every reference resolves and every block assembles
    for (const auto& e : doc.maps) doc.map(e.name);
    for (const auto& e : doc.dualities) doc.duality(e.name);
    for (const auto& e : doc.doubles) doc.build_double(e.name);
    return doc;
}

std::string emit_tlx(const TLXDocument& doc) {
    std::ostringstream out;
    out << "group m=" << doc.group.m << " t=" << (doc.group.has_t ? 1 : 0)
        << " ws=" << doc.group.w_s << " wt=" << doc.group.w_t << "\n";
    for (const auto& e : doc.complexes) {
        out << "\ncomplex " << e.name << "\n  ranks";
        for (int i = 0; i <= e.c.top(); ++i) out << " " << e.c.rank(i);
        out << "\n";
        for (int i = 1; i <= e.c.top(); ++i) {
            GRMatrix d = e.c.diff(i);
            if (!d.is_zero()) out << "  d " << i << " " << emit_matrix(d) << "\n";
        }
        out << "end\n";
    }
    for (const auto& e : doc.maps) {
        out << "\nmap " << e.name << "\n  src " << e.src << "\n  tgt " << e.tgt << "\n";
        for (const auto& [deg, m] : e.blocks) out << "  f " << deg << " " << emit_matrix(m) << "\n";
        out << "end\n";
    }
    for (const auto& e : doc.dualities) {
        out << "\nduality " << e.name << "\n  complex " << e.complex << "\n  n " << e.n << "\n";
        for (const auto& [deg, m] : e.blocks) out << "  p " << deg << " " << emit_matrix(m) << "\n";
        out << "end\n";
    }
    for (const auto& e : doc.doubles) {
        out << "\ndouble " << e.name << "\n  kind " << kind_name(e.kind) << "\n  base " << e.base
            << "\n  n " << e.n << "\n";
        if (!e.alpha.empty()) out << "  alpha " << e.alpha << "\n";
        if (e.u) out << "  u [" << e.u->str() << "]\n";
        if (!e.basep.empty()) out << "  basep " << e.basep << "\n";
        out << "end\n";
    }
    return out.str();
}

}  // namespace tlab