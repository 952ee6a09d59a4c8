#pragma once

#include <stdexcept>
#include <string>

namespace nclf {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class NotInvertible : public Error {
public:
    NotInvertible() : Error("value is not invertible") {}
};

class BackendMismatch : public Error {
public:
    BackendMismatch() : Error("operands differ in backend or dimension") {}
};

class SingularSubmatrix : public Error {
public:
    SingularSubmatrix(int r, int c)
        : Error("submatrix at (" + std::to_string(r) + "," + std::to_string(c) + ") is singular"),
          row(r), col(c) {}
    int row, col;
};

class SingularMatrix : public Error {
public:
    SingularMatrix() : Error("matrix is singular") {}
};

class NoInvertiblePivot : public Error {
public:
    explicit NoInvertiblePivot(int c)
        : Error("no invertible pivot in column " + std::to_string(c)), column(c) {}
    int column;
};

class InconsistentSystem : public Error {
public:
    InconsistentSystem() : Error("linear system has nonzero residual") {}
};

// first/second are column indices (projective) or lattice sites (leapfrog).
class DegenerateConfiguration : public Error {
public:
    DegenerateConfiguration(int i, int j, const std::string &what = "degenerate configuration")
        : Error(what + " at (" + std::to_string(i) + "," + std::to_string(j) + ")"), first(i), second(j) {}
    int first, second;
};

class SingularH : public Error {
public:
    explicit SingularH(int i) : Error("h is singular at " + std::to_string(i)), index(i) {}
    int index;
};

class SingularToeplitz : public Error {
public:
    SingularToeplitz(int n, int k)
        : Error("Toeplitz block singular for n=" + std::to_string(n) + " k=" + std::to_string(k)), n(n), k(k) {}
    int n, k;
};

class MomentOutOfWindow : public Error {
public:
    explicit MomentOutOfWindow(int k) : Error("moment m_" + std::to_string(k) + " outside window"), index(k) {}
    int index;
};

class UnregisteredInverse : public Error {
public:
    explicit UnregisteredInverse(const std::string &atom) : Error("no registered inverse for " + atom) {}
};

class SingularF : public Error {
public:
    explicit SingularF(int i) : Error("f is singular at square " + std::to_string(i)), index(i) {}
    int index;
};

}
