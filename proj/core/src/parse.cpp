#include "subdyn/parse.hpp"

#include <cctype>

namespace subdyn {

namespace {

struct Cursor {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    [[noreturn]] void fail(const std::string& msg) {
        throw ParseError(msg + " at offset " + std::to_string(pos), static_cast<long>(pos));
    }
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::string read_ident(Cursor& cur) {
    cur.skip_ws();
    std::size_t start = cur.pos;
    while (cur.pos < cur.s.size() && ident_char(cur.s[cur.pos])) ++cur.pos;
    return cur.s.substr(start, cur.pos - start);
}

BigInt read_int(Cursor& cur) {
    cur.skip_ws();
    std::size_t start = cur.pos;
    while (cur.pos < cur.s.size() && std::isdigit(static_cast<unsigned char>(cur.s[cur.pos])))
        ++cur.pos;
    if (cur.pos == start) cur.fail("expected integer");
    return BigInt(cur.s.substr(start, cur.pos - start));
}

unsigned read_nat(Cursor& cur) {
    BigInt n = read_int(cur);
    if (!n.fits_uint_p()) cur.fail("exponent too large");
    return static_cast<unsigned>(n.get_ui());
}

// coeff := int | int '/' int
Scalar read_coeff(Cursor& cur, const FieldPtr& field) {
    BigInt num = read_int(cur);
    BigInt den = 1;
    if (cur.peek() == '/') {
        ++cur.pos;
        std::size_t den_at = cur.pos;
        den = read_int(cur);
        if (den == 0)
            throw ParseError("division by zero in a coefficient at offset " +
                                 std::to_string(den_at),
                             static_cast<long>(den_at));
    }
    Rational q(num, den);
    q.canonicalize();
    return Scalar::of_rational(field, q);
}

// term := coeff ('*' factor)* | factor ('*' factor)*
Term read_term(Cursor& cur, const RingPtr& ring) {
    const FieldPtr& field = ring->field();
    Scalar coeff = Scalar::one(field);
    Exponents exp(ring->nvars(), 0);

    auto read_factor = [&]() {
        std::size_t at = cur.pos;
        std::string name = read_ident(cur);
        unsigned e = 1;
        if (cur.peek() == '^') {
            ++cur.pos;
            e = read_nat(cur);
        }
        long idx = ring->index_of(name);
        if (idx >= 0) {
            exp[static_cast<std::size_t>(idx)] += e;
            return;
        }
        if (field->kind == FieldKind::Function) {
            for (std::size_t i = 0; i < field->parameters.size(); ++i)
                if (field->parameters[i] == name) {
                    if (e) coeff = coeff * Scalar::parameter(field, i, e);
                    return;
                }
        }
        throw ParseError("unknown variable '" + name + "' at offset " + std::to_string(at),
                         static_cast<long>(at));
    };

    char c = cur.peek();
    if (std::isdigit(static_cast<unsigned char>(c)))
        coeff = coeff * read_coeff(cur, field);
    else if (ident_start(c))
        read_factor();
    else
        cur.fail("expected term");

    while (cur.peek() == '*') {
        ++cur.pos;
        if (!ident_start(cur.peek())) cur.fail("expected identifier");
        read_factor();
    }
    return {std::move(exp), std::move(coeff)};
}

} // namespace

Polynomial parse_poly(const std::string& text, const RingPtr& ring) {
    Cursor cur{text};
    std::vector<Term> terms;
    bool negate = false;
    if (cur.peek() == '-') {
        ++cur.pos;
        negate = true;
    }
    while (true) {
        Term t = read_term(cur, ring);
        if (negate) t.coeff = -t.coeff;
        terms.push_back(std::move(t));
        if (cur.done()) break;
        char c = cur.peek();
        if (c == '+')
            negate = false;
        else if (c == '-')
            negate = true;
        else
            cur.fail("expected '+' or '-'");
        ++cur.pos;
    }
    return Polynomial::from_terms(ring, std::move(terms));
}

} // namespace subdyn
