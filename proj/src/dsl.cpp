#include "ordlab/dsl.hpp"

#include <cctype>

namespace ordlab {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::Parse, msg); }

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\n");
    return s.substr(a, b - a + 1);
}

// split at top-level separators (',' and ';' kept apart: ';' starts the option list)
struct Args {
    std::vector<std::string> pos;
    std::vector<std::pair<std::string, std::string>> opts;
};

Args split_args(const std::string& body) {
    Args a;
    int depth = 0;
    std::string cur;
    bool in_opts = false;
    auto flush = [&] {
        std::string t = trim(cur);
        cur.clear();
        if (t.empty()) bad("empty argument");
        size_t eq = t.find('=');
        bool named = eq != std::string::npos && t.find_first_of("([") > eq;
        if (in_opts || named) {
            if (!named) bad("expected key=value, got '" + t + "'");
            a.opts.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
        } else {
            a.pos.push_back(t);
        }
    };
    for (char ch : body) {
        if (ch == '(' || ch == '[') ++depth;
        if (ch == ')' || ch == ']') --depth;
        if (depth < 0) bad("unbalanced brackets");
        if (depth == 0 && (ch == ',' || ch == ';')) {
            flush();
            if (ch == ';') in_opts = true;
            continue;
        }
        cur += ch;
    }
    if (depth != 0) bad("unbalanced brackets");
    if (!trim(cur).empty() || !a.pos.empty() || !a.opts.empty()) flush();
    return a;
}

Convention conv_of(const Args& a, Convention dflt) {
    for (const auto& [k, v] : a.opts) {
        if (k != "parity") continue;
        if (v == "even") return Convention::Even;
        if (v == "odd") return Convention::Odd;
        bad("parity must be even or odd");
    }
    return dflt;
}

long to_long(const std::string& s) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) bad("expected a natural number, got '" + s + "'");
    return std::stol(s);
}

std::string opt(const Args& a, const std::string& key) {
    for (const auto& [k, v] : a.opts)
        if (k == key) return v;
    bad("missing " + key + "=");
}

void expect_pos(const Args& a, size_t n, const std::string& what) {
    if (a.pos.size() != n) bad(what + " takes " + std::to_string(n) + " positional argument(s)");
}

AnyFn parse(const std::string& text, Convention dc);

SimpleFn parse_simple(const std::string& text, Convention dc) { return as_simple(parse(text, dc)); }

StructFn parse_struct(const std::string& text, Convention dc) {
    AnyFn f = parse(text, dc);
    if (!std::holds_alternative<StructFn>(f)) bad("expected a structural function: " + text);
    return std::get<StructFn>(f);
}

AnyFn parse(const std::string& raw, Convention dc) {
    std::string text = trim(raw);
    size_t open = text.find('(');
    if (open == std::string::npos || text.back() != ')') bad("expected name(...): '" + text + "'");
    std::string name = trim(text.substr(0, open));
    Args a = split_args(text.substr(open + 1, text.size() - open - 2));
    Convention cv = conv_of(a, dc);

    if (name == "fdelta") {
        expect_pos(a, 1, "fdelta");
        return f_delta(parse_ordinal(a.pos[0]), cv);
    }
    if (name == "type0") {
        expect_pos(a, 1, "type0");
        return type0(to_long(a.pos[0]), cv);
    }
    if (name == "const") {
        expect_pos(a, 2, "const");
        SimpleFn f = SimpleFn::constant(parse_ordinal(a.pos[1]), parse_rational(a.pos[0]));
        return f;
    }
    if (name == "scale") {
        expect_pos(a, 2, "scale");
        SimpleFn g = parse_simple(a.pos[1], dc);
        Rational c = parse_rational(a.pos[0]);
        SimpleFn f = g.scaled(c);
        f.set_descriptor("scale(" + rat_str(c) + ", " + g.descriptor() + ")");
        return f;
    }
    if (name == "patch") {
        std::vector<PatchItem> items;
        Ordinal top;
        std::string desc;
        for (const auto& p : a.pos) {
            size_t arrow = p.find("->");
            if (p.empty() || p[0] != '[' || arrow == std::string::npos) bad("patch item must read [lo,hi] -> F");
            std::string iv = trim(p.substr(0, arrow));
            if (iv.back() != ']') bad("patch interval must be [lo,hi]");
            std::string inner = iv.substr(1, iv.size() - 2);
            size_t comma = inner.find(',');
            if (comma == std::string::npos) bad("patch interval must be [lo,hi]");
            Ordinal lo = parse_ordinal(trim(inner.substr(0, comma)));
            Ordinal hi = parse_ordinal(trim(inner.substr(comma + 1)));
            if (hi < lo) bad("patch interval with hi < lo");
            SimpleFn g = parse_simple(p.substr(arrow + 2), dc);
            items.push_back(PatchItem{lo, hi, g});
            top = std::max(top, hi);
            desc += (desc.empty() ? "" : ", ") + iv + " -> " + g.descriptor();
        }
        if (items.empty()) bad("patch needs at least one item");
        for (const auto& [k, v] : a.opts)
            if (k == "top") top = parse_ordinal(v);
        return patch(top, items, "patch(" + desc + ")");
    }
    if (name == "gallery") {
        if (a.pos.empty()) bad("gallery needs a name");
        const std::string& g = a.pos[0];
        if (g == "prop53a" || g == "prop53b") {
            expect_pos(a, 2, "gallery(" + g + ", N)");
            long n = to_long(a.pos[1]);
            if (g == "prop53a") return prop53a(n, cv);
            return prop53b(n, cv);
        }
        if (g == "prop53c" || g == "prop53d") {
            expect_pos(a, 1, "gallery(" + g + ")");
            return g == "prop53c" ? prop53c(cv) : prop53d(cv);
        }
        if (g == "type0") {
            expect_pos(a, 2, "gallery(type0, n)");
            return type0(to_long(a.pos[1]), cv);
        }
        if (g == "f_delta" || g == "fdelta") {
            expect_pos(a, 2, "gallery(f_delta, gamma)");
            return f_delta(parse_ordinal(a.pos[1]), cv);
        }
        throw Error(ErrorCode::UnknownGallery, g);
    }
    if (name == "type") {
        if (!a.pos.empty()) bad("type takes n=, m=, k=");
        return build_type(to_long(opt(a, "n")), to_long(opt(a, "m")), to_long(opt(a, "k")), cv);
    }
    if (name == "truncate") {
        expect_pos(a, 2, "truncate");
        return truncate(parse_struct(a.pos[0], dc), to_long(a.pos[1]));
    }
    if (name == "flatten") {
        expect_pos(a, 1, "flatten");
        return flatten(parse_struct(a.pos[0], dc));
    }
    if (name == "blocks") {
        expect_pos(a, 1, "blocks");
        return flatten_blocks(parse_struct(a.pos[0], dc));
    }
    bad("unknown function form '" + name + "'");
}

}  // namespace

AnyFn parse_function(const std::string& text, Convention default_conv) { return parse(text, default_conv); }

SimpleFn as_simple(const AnyFn& f) {
    if (const auto* s = std::get_if<SimpleFn>(&f)) return *s;
    return flatten(std::get<StructFn>(f));
}

std::string fn_descriptor(const AnyFn& f) {
    if (const auto* s = std::get_if<SimpleFn>(&f)) return s->descriptor();
    return std::get<StructFn>(f).descriptor;
}

}  // namespace ordlab
