#include "kisin/series_literal.hpp"

#include <cctype>

#include "kisin/errors.hpp"

namespace kisin {

namespace {

class Parser {
public:
    Parser(const std::string& text, const FieldPtr& k) : s_(text), k_(k) {}

    USeries run() {
        USeries v = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected character '" + std::string(1, s_[pos_]) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("series literal \"" + s_ + "\": " + why + " at offset " + std::to_string(pos_));
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool starts_factor() {
        skip_ws();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return std::isdigit(static_cast<unsigned char>(c)) || c == 'a' || c == 'u' || c == '(' ||
               (c == 'O' && pos_ + 1 < s_.size() && s_[pos_ + 1] == '(');
    }

    long long integer() {
        skip_ws();
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
            skip_ws();
        }
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) fail("integer expected");
        long long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > (1LL << 40)) fail("integer too large");
            ++pos_;
        }
        return neg ? -v : v;
    }

    USeries expr() {
        skip_ws();
        USeries acc = USeries::zero(k_);
        bool first = true;
        while (true) {
            bool neg = false;
            if (peek('+') || peek('-')) {
                neg = s_[pos_] == '-';
                ++pos_;
            } else if (!first) {
                break;
            }
            USeries t = term();
            acc = neg ? acc - t : acc + t;
            first = false;
            skip_ws();
            if (!(peek('+') || peek('-'))) break;
        }
        return acc;
    }

    USeries term() {
        USeries acc = factor();
        while (true) {
            if (peek('*')) {
                ++pos_;
                acc = acc * factor();
            } else if (starts_factor()) {
                acc = acc * factor();
            } else {
                break;
            }
        }
        return acc;
    }

    USeries factor() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == 'O') {
            ++pos_;
            if (!peek('(')) fail("'(' expected after O");
            ++pos_;
            if (!peek('u')) fail("O(u^N) expected");
            ++pos_;
            int n = 1;
            if (peek('^')) {
                ++pos_;
                n = static_cast<int>(integer());
            }
            if (!peek(')')) fail("')' expected");
            ++pos_;
            return USeries::zero(k_, n);
        }
        USeries base(k_);
        bool is_u = false, is_a = false, is_num = false;
        long long num = 0;
        if (std::isdigit(static_cast<unsigned char>(c))) {
            num = integer();
            is_num = true;
            base = USeries::constant(k_, k_->from_int(num));
        } else if (c == 'a') {
            if (k_->degree() == 1) fail("generator 'a' used over the prime field");
            ++pos_;
            is_a = true;
            base = USeries::constant(k_, k_->gen());
        } else if (c == 'u') {
            ++pos_;
            is_u = true;
            base = USeries::u_power(k_, 1);
        } else if (c == '(') {
            ++pos_;
            base = expr();
            if (!peek(')')) fail("')' expected");
            ++pos_;
        } else {
            fail("factor expected");
        }
        if (!peek('^')) return base;
        ++pos_;
        long long e = integer();
        if (is_u) return USeries::u_power(k_, static_cast<int>(e));
        if (is_a) return USeries::constant(k_, k_->pow(k_->gen(), e));
        if (is_num) {
            if (e < 0 && k_->from_int(num) == 0) fail("zero raised to a negative power");
            return USeries::constant(k_, k_->pow(k_->from_int(num), e));
        }
        if (e < 0) {
            if (!(base.is_exact() && base.is_monomial())) fail("negative power of a non-monomial");
            base = base.inverse(kExact);
            e = -e;
        }
        USeries out = USeries::one(k_);
        for (long long i = 0; i < e; ++i) out = out * base;
        return out;
    }

    const std::string& s_;
    const FieldPtr& k_;
    size_t pos_ = 0;
};

}  // namespace

USeries parse_series(const std::string& text, const FieldPtr& k) {
    return Parser(text, k).run();
}

}  // namespace kisin
