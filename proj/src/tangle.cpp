#include "gwtqft/tangle.hpp"

#include <cctype>
#include <functional>
#include <sstream>
#include <tuple>

#include "gwtqft/error.hpp"

namespace gwtqft {

namespace {

constexpr std::size_t kSizeLimit = std::size_t(1) << 20;

std::string strand_name(const Strand& s) { return s.colour + (s.up ? "+" : "-"); }

std::string piece_name(const Piece& p) {
    switch (p.kind) {
        case PieceKind::Id: return p.count == 1 ? "id" : "id:" + std::to_string(p.count);
        case PieceKind::Over: return "x+";
        case PieceKind::Under: return "x-";
        case PieceKind::CapLeft: return "cap_l";
        case PieceKind::CapRight: return "cap_r";
        case PieceKind::CupLeft: return "cup_l:" + p.colour;
        case PieceKind::CupRight: return "cup_r:" + p.colour;
        case PieceKind::TwistPos: return "t+";
        case PieceKind::TwistNeg: return "t-";
    }
    return "?";
}

std::size_t arity_in(const Piece& p) {
    switch (p.kind) {
        case PieceKind::Id: return p.count;
        case PieceKind::Over:
        case PieceKind::Under:
        case PieceKind::CapLeft:
        case PieceKind::CapRight: return 2;
        case PieceKind::CupLeft:
        case PieceKind::CupRight: return 0;
        case PieceKind::TwistPos:
        case PieceKind::TwistNeg: return 1;
    }
    return 0;
}

[[noreturn]] void parse_fail(std::size_t line, std::size_t col, const std::string& msg) {
    throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + msg);
}

// Applies one piece to the strands in [pos, pos + in) and returns the strands it produces.
std::vector<Strand> apply_profile(const Piece& p, const std::vector<Strand>& in, std::size_t slice, std::size_t pos) {
    auto fail = [&](const std::string& why) {
        throw Error(ErrorCode::ProfileMismatch, "slice " + std::to_string(slice + 1) + ", position " +
                                                    std::to_string(pos + 1) + ": " + piece_name(p) + " " + why);
    };
    switch (p.kind) {
        case PieceKind::Id:
        case PieceKind::TwistPos:
        case PieceKind::TwistNeg: return in;
        case PieceKind::Over:
        case PieceKind::Under: return {in[1], in[0]};
        case PieceKind::CapLeft:
            if (in[0].colour != in[1].colour || in[0].up || !in[1].up)
                fail("expects (A-, A+), got (" + strand_name(in[0]) + ", " + strand_name(in[1]) + ")");
            return {};
        case PieceKind::CapRight:
            if (in[0].colour != in[1].colour || !in[0].up || in[1].up)
                fail("expects (A+, A-), got (" + strand_name(in[0]) + ", " + strand_name(in[1]) + ")");
            return {};
        case PieceKind::CupLeft: return {{p.colour, true}, {p.colour, false}};
        case PieceKind::CupRight: return {{p.colour, false}, {p.colour, true}};
    }
    return {};
}

class Evaluator {
public:
    explicit Evaluator(const ColourTable& colours) : colours_(colours) {}

    Module module_of(const Strand& s) {
        auto it = colours_.find(s.colour);
        if (it == colours_.end()) throw Error(ErrorCode::UnsupportedObject, "no module for colour " + s.colour);
        if (s.up) return it->second;
        auto d = duals_.find(s.colour);
        if (d == duals_.end()) d = duals_.emplace(s.colour, dual_module(it->second)).first;
        return d->second;
    }

    // Transposed piece matrix: row = linear input index, entries keyed by linear output index.
    const CMatrix& piece_columns(const Piece& p, const std::vector<Strand>& in) {
        Module a, b;
        if (!in.empty()) a = module_of(in[0]);
        if (in.size() > 1) b = module_of(in[1]);
        if (p.kind == PieceKind::CupLeft || p.kind == PieceKind::CupRight) a = module_of({p.colour, true});
        const auto key = std::make_tuple(static_cast<int>(p.kind), a.get(), b.get());
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;
        CMatrix m;
        switch (p.kind) {
            case PieceKind::Over: m = braiding(a, b); break;
            case PieceKind::Under: m = braiding_inverse(b, a); break;
            case PieceKind::CapLeft: m = ev_left(b); break;
            case PieceKind::CapRight: m = ev_right(a); break;
            case PieceKind::CupLeft: m = coev_left(a); break;
            case PieceKind::CupRight: m = coev_right(a); break;
            case PieceKind::TwistPos: m = twist(a); break;
            case PieceKind::TwistNeg: {
                const CMatrix t = twist(a);
                std::vector<Cyclotomic> d(a->dim());
                for (std::size_t i = 0; i < d.size(); ++i) d[i] = t.at(i, i).inverse();
                m = CMatrix::diagonal(d);
                break;
            }
            case PieceKind::Id: break;
        }
        return cache_.emplace(key, m.transpose()).first->second;
    }

private:
    const ColourTable& colours_;
    std::map<std::string, Module> duals_;
    std::map<std::tuple<int, const void*, const void*>, CMatrix> cache_;
};

using Key = std::vector<std::uint32_t>;
using State = std::map<Key, Cyclotomic>;

std::size_t profile_dim(Evaluator& ev, const std::vector<Strand>& prof) {
    std::size_t d = 1;
    for (const auto& s : prof) {
        d *= ev.module_of(s)->dim();
        if (d > kSizeLimit) throw Error(ErrorCode::SizeLimit, "ambient tensor dimension exceeds 2^20");
    }
    return d;
}

// Linear index of a multi-index, first strand most significant.
std::size_t linear(const std::vector<std::size_t>& dims, const std::uint32_t* idx) {
    std::size_t l = 0;
    for (std::size_t i = 0; i < dims.size(); ++i) l = l * dims[i] + idx[i];
    return l;
}

}  // namespace

ParsedWord parse_word(const std::string& text) {
    ParsedWord out;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    bool have_input = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        // tokens with their columns
        std::vector<std::pair<std::string, std::size_t>> toks;
        for (std::size_t i = 0; i < line.size();) {
            if (std::isspace(static_cast<unsigned char>(line[i]))) { ++i; continue; }
            std::size_t j = i;
            while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
            toks.push_back({line.substr(i, j - i), i + 1});
            i = j;
        }
        if (toks.empty()) continue;

        if (toks[0].first == "colour") {
            if (toks.size() < 4) parse_fail(lineno, toks[0].second, "colour needs a name, a kind and a weight");
            const std::string& name = toks[1].first;
            ColourSpec spec;
            const std::string& kind = toks[2].first;
            if (kind == "verma") spec.kind = ColourSpec::Kind::Verma;
            else if (kind == "one_dim") spec.kind = ColourSpec::Kind::OneDim;
            else if (kind == "kirby") spec.kind = ColourSpec::Kind::Kirby;
            else parse_fail(lineno, toks[2].second, "unknown colour kind '" + kind + "'");
            for (std::size_t t = 3; t < toks.size(); ++t) {
                if (toks[t].first == "odd" && t + 1 == toks.size()) {
                    spec.parity = 1;
                    continue;
                }
                try {
                    spec.weight.push_back(parse_rational(toks[t].first));
                } catch (const Error& e) {
                    parse_fail(lineno, toks[t].second, e.what());
                }
            }
            if (out.colours.count(name)) parse_fail(lineno, toks[1].second, "colour '" + name + "' declared twice");
            out.colours[name] = spec;
            continue;
        }
        if (toks[0].first == "input:") {
            if (have_input || !out.word.slices.empty()) parse_fail(lineno, toks[0].second, "input must come once, before the slices");
            have_input = true;
            for (std::size_t t = 1; t < toks.size(); ++t) {
                const std::string& s = toks[t].first;
                if (s.size() < 2 || (s.back() != '+' && s.back() != '-'))
                    parse_fail(lineno, toks[t].second, "strand must be NAME+ or NAME-");
                out.word.input.push_back({s.substr(0, s.size() - 1), s.back() == '+'});
            }
            continue;
        }
        std::vector<Piece> slice;
        for (const auto& [tok, col] : toks) {
            Piece p;
            if (tok == "id") p.kind = PieceKind::Id;
            else if (tok.rfind("id:", 0) == 0) {
                p.kind = PieceKind::Id;
                try {
                    const long k = to_long(parse_rational(tok.substr(3)));
                    if (k <= 0) throw Error(ErrorCode::ParseError, "count must be positive");
                    p.count = static_cast<std::size_t>(k);
                } catch (const Error&) {
                    parse_fail(lineno, col, "bad strand count in '" + tok + "'");
                }
            } else if (tok == "x+") p.kind = PieceKind::Over;
            else if (tok == "x-") p.kind = PieceKind::Under;
            else if (tok == "t+") p.kind = PieceKind::TwistPos;
            else if (tok == "t-") p.kind = PieceKind::TwistNeg;
            else if (tok == "cap_l") p.kind = PieceKind::CapLeft;
            else if (tok == "cap_r") p.kind = PieceKind::CapRight;
            else if (tok.rfind("cup_l:", 0) == 0 || tok.rfind("cup_r:", 0) == 0) {
                p.kind = tok[4] == 'l' ? PieceKind::CupLeft : PieceKind::CupRight;
                p.colour = tok.substr(6);
                if (p.colour.empty()) parse_fail(lineno, col, "cup needs a colour");
            } else parse_fail(lineno, col, "unknown piece '" + tok + "'");
            slice.push_back(p);
        }
        out.word.slices.push_back(std::move(slice));
    }
    return out;
}

std::string format_word(const RibbonWord& w) {
    std::ostringstream os;
    os << "input:";
    for (const auto& s : w.input) os << ' ' << strand_name(s);
    os << '\n';
    for (const auto& sl : w.slices) {
        for (std::size_t i = 0; i < sl.size(); ++i) os << (i ? " " : "") << piece_name(sl[i]);
        os << '\n';
    }
    return os.str();
}

std::vector<Strand> validate_word(const RibbonWord& w) {
    std::vector<Strand> prof = w.input;
    for (std::size_t s = 0; s < w.slices.size(); ++s) {
        std::vector<Strand> next;
        std::size_t pos = 0;
        for (const auto& p : w.slices[s]) {
            const std::size_t k = arity_in(p);
            if (pos + k > prof.size())
                throw Error(ErrorCode::ProfileMismatch, "slice " + std::to_string(s + 1) + ", position " +
                                                            std::to_string(pos + 1) + ": " + piece_name(p) +
                                                            " runs past the " + std::to_string(prof.size()) + " strands");
            std::vector<Strand> in(prof.begin() + pos, prof.begin() + pos + k);
            for (auto& o : apply_profile(p, in, s, pos)) next.push_back(std::move(o));
            pos += k;
        }
        if (pos != prof.size())
            throw Error(ErrorCode::ProfileMismatch, "slice " + std::to_string(s + 1) + ", position " +
                                                        std::to_string(pos + 1) + ": " +
                                                        std::to_string(prof.size() - pos) + " strands not covered");
        prof = std::move(next);
    }
    return prof;
}

CMatrix evaluate(const RibbonWord& w, const ColourTable& colours) {
    const auto out_prof = validate_word(w);
    Evaluator ev(colours);

    std::vector<Strand> prof = w.input;
    const std::size_t in_dim = profile_dim(ev, prof);
    // key[0] is the input column; key[1..] the basis indices of the current strands
    State state;
    {
        std::vector<std::size_t> dims;
        for (const auto& s : prof) dims.push_back(ev.module_of(s)->dim());
        for (std::size_t col = 0; col < in_dim; ++col) {
            Key k(prof.size() + 1);
            k[0] = static_cast<std::uint32_t>(col);
            std::size_t rest = col;
            for (std::size_t i = prof.size(); i-- > 0;) {
                k[i + 1] = static_cast<std::uint32_t>(rest % dims[i]);
                rest /= dims[i];
            }
            state.emplace(std::move(k), Cyclotomic(1));
        }
    }

    for (std::size_t s = 0; s < w.slices.size(); ++s) {
        std::size_t pos = 0;  // position in the partially updated profile
        std::vector<Strand> next = prof;
        for (const auto& p : w.slices[s]) {
            const std::size_t k = arity_in(p);
            std::vector<Strand> in(next.begin() + pos, next.begin() + pos + k);
            const auto produced = apply_profile(p, in, s, pos);
            if (p.kind != PieceKind::Id) {
                const CMatrix& cols = ev.piece_columns(p, in);
                std::vector<std::size_t> din, dout;
                for (const auto& x : in) din.push_back(ev.module_of(x)->dim());
                for (const auto& x : produced) dout.push_back(ev.module_of(x)->dim());
                State upd;
                std::vector<std::uint32_t> outs(produced.size());
                for (const auto& [key, val] : state) {
                    const std::size_t li = linear(din, key.data() + 1 + pos);
                    for (const auto& [lo, c] : cols.row(li)) {
                        std::size_t rest = lo;
                        for (std::size_t i = produced.size(); i-- > 0;) {
                            outs[i] = static_cast<std::uint32_t>(rest % dout[i]);
                            rest /= dout[i];
                        }
                        Key nk;
                        nk.reserve(key.size() - k + produced.size());
                        nk.insert(nk.end(), key.begin(), key.begin() + 1 + pos);
                        nk.insert(nk.end(), outs.begin(), outs.end());
                        nk.insert(nk.end(), key.begin() + 1 + pos + k, key.end());
                        auto [it, fresh] = upd.emplace(std::move(nk), val * c);
                        if (!fresh) {
                            it->second += val * c;
                            if (it->second.is_zero()) upd.erase(it);
                        }
                    }
                }
                state = std::move(upd);
            }
            next.erase(next.begin() + pos, next.begin() + pos + k);
            next.insert(next.begin() + pos, produced.begin(), produced.end());
            pos += produced.size();
        }
        prof = std::move(next);
        profile_dim(ev, prof);
    }

    std::vector<std::size_t> dims;
    for (const auto& s : out_prof) dims.push_back(ev.module_of(s)->dim());
    const std::size_t out_dim = profile_dim(ev, out_prof);
    CMatrix result(out_dim, in_dim);
    for (const auto& [key, val] : state) result.add_to(linear(dims, key.data() + 1), key[0], val);
    return result;
}

Cyclotomic evaluate_cut(const RibbonWord& w, const ColourTable& colours) {
    const auto out = validate_word(w);
    if (w.input.size() != 1 || out.size() != 1 || !(w.input[0] == out[0]) || !w.input[0].up)
        throw Error(ErrorCode::UnsupportedObject, "cut evaluation needs one upward strand in and out");
    auto it = colours.find(w.input[0].colour);
    if (it == colours.end()) throw Error(ErrorCode::UnsupportedObject, "no module for colour " + w.input[0].colour);
    const Module& v = it->second;
    if (v->kind() != ModuleKind::Verma || !v->gw().typical(v->highest_weight()))
        throw Error(ErrorCode::UnsupportedObject, "cut colour must be a typical Verma module");
    const auto s = evaluate(w, colours).as_scalar();
    if (!s) throw Error(ErrorCode::NotScalar, "cut evaluation is not a multiple of the identity");
    return *s * modified_dim(v->gw(), v->highest_weight(), v->highest_parity());
}

LinkData link_data(const RibbonWord& w) {
    const auto out_prof = validate_word(w);
    // segments joined with union-find; each strand position carries a segment id
    std::vector<std::size_t> parent;
    std::vector<std::string> seg_colour;
    auto make = [&](const std::string& c) {
        parent.push_back(parent.size());
        seg_colour.push_back(c);
        return parent.size() - 1;
    };
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](std::size_t a, std::size_t b) { parent[find(a)] = find(b); };

    struct Crossing { std::size_t a, b; long sign; };
    std::vector<Crossing> crossings;
    std::vector<std::pair<std::size_t, long>> twists;

    std::vector<Strand> prof = w.input;
    std::vector<std::size_t> segs;
    for (const auto& s : prof) segs.push_back(make(s.colour));
    const std::vector<std::size_t> input_segs = segs;

    for (std::size_t s = 0; s < w.slices.size(); ++s) {
        std::vector<Strand> np;
        std::vector<std::size_t> ns;
        std::size_t pos = 0;
        for (const auto& p : w.slices[s]) {
            const std::size_t k = arity_in(p);
            std::vector<Strand> in(prof.begin() + pos, prof.begin() + pos + k);
            const auto produced = apply_profile(p, in, s, pos);
            switch (p.kind) {
                case PieceKind::Id:
                    for (std::size_t i = 0; i < k; ++i) ns.push_back(segs[pos + i]);
                    break;
                case PieceKind::TwistPos:
                case PieceKind::TwistNeg:
                    twists.push_back({segs[pos], p.kind == PieceKind::TwistPos ? 1 : -1});
                    ns.push_back(segs[pos]);
                    break;
                case PieceKind::Over:
                case PieceKind::Under: {
                    const long base = p.kind == PieceKind::Over ? 1 : -1;
                    const long o = (in[0].up ? 1 : -1) * (in[1].up ? 1 : -1);
                    crossings.push_back({segs[pos], segs[pos + 1], base * o});
                    ns.push_back(segs[pos + 1]);
                    ns.push_back(segs[pos]);
                    break;
                }
                case PieceKind::CapLeft:
                case PieceKind::CapRight: unite(segs[pos], segs[pos + 1]); break;
                case PieceKind::CupLeft:
                case PieceKind::CupRight: {
                    const std::size_t a = make(p.colour);
                    ns.push_back(a);
                    ns.push_back(a);
                    break;
                }
            }
            for (auto& x : produced) np.push_back(x);
            pos += k;
        }
        prof = std::move(np);
        segs = std::move(ns);
    }
    if (segs.size() != input_segs.size())
        throw Error(ErrorCode::ProfileMismatch, "closure needs equal input and output profiles");
    for (std::size_t i = 0; i < segs.size(); ++i) {
        if (!(out_prof[i] == w.input[i]))
            throw Error(ErrorCode::ProfileMismatch, "closure: output strand " + std::to_string(i + 1) + " differs from input");
        unite(segs[i], input_segs[i]);
    }

    LinkData ld;
    std::map<std::size_t, int> comp;
    for (std::size_t x = 0; x < parent.size(); ++x) {
        const std::size_t r = find(x);
        if (!comp.count(r)) {
            comp[r] = static_cast<int>(ld.components++);
            ld.colour.push_back(seg_colour[x]);
        }
    }
    ld.linking.assign(ld.components, std::vector<long>(ld.components, 0));
    std::vector<std::vector<long>> twice(ld.components, std::vector<long>(ld.components, 0));
    for (const auto& c : crossings) {
        const int a = comp[find(c.a)], b = comp[find(c.b)];
        if (a == b) ld.linking[a][a] += c.sign;
        else {
            twice[a][b] += c.sign;
            twice[b][a] += c.sign;
        }
    }
    for (const auto& [seg, t] : twists) ld.linking[comp[find(seg)]][comp[find(seg)]] += t;
    for (std::size_t a = 0; a < ld.components; ++a)
        for (std::size_t b = 0; b < ld.components; ++b)
            if (a != b) ld.linking[a][b] = twice[a][b] / 2;
    for (auto s : input_segs) ld.input_component.push_back(comp[find(s)]);
    return ld;
}

}  // namespace gwtqft
