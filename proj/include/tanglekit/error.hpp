#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tk {

// Every domain failure raised by the library derives from Error; the CLI maps
// it to exit status 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error(msg + " at " + std::to_string(line) + ":" + std::to_string(column)),
          line_(line), column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

class IllegalMove : public Error {
public:
    using Error::Error;
};

inline int64_t checked_add(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in exponent arithmetic");
    return r;
}

inline int64_t checked_mul(int64_t a, int64_t b) {
    int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in exponent arithmetic");
    return r;
}

inline int64_t checked_neg(int64_t a) {
    if (a == INT64_MIN) throw Error("integer overflow in exponent arithmetic");
    return -a;
}

}  // namespace tk
