#ifndef SECSWIPT_CONE_PROGRAM_HPP
#define SECSWIPT_CONE_PROGRAM_HPP

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace secswipt {

// Sparse affine expression  constant + sum_i coeff_i * x_{index_i}.
struct LinExpr {
    std::vector<std::pair<int, double>> terms;
    double constant = 0.0;

    LinExpr() = default;
    explicit LinExpr(double c) : constant(c) {}

    static LinExpr var(int index, double coeff = 1.0)
    {
        LinExpr e;
        e.terms.emplace_back(index, coeff);
        return e;
    }

    LinExpr& add(int index, double coeff)
    {
        if (coeff != 0.0) terms.emplace_back(index, coeff);
        return *this;
    }

    LinExpr& operator+=(const LinExpr& o)
    {
        constant += o.constant;
        terms.insert(terms.end(), o.terms.begin(), o.terms.end());
        return *this;
    }

    LinExpr& operator*=(double a)
    {
        constant *= a;
        for (auto& t : terms) t.second *= a;
        return *this;
    }

    double eval(const Eigen::VectorXd& x) const
    {
        double v = constant;
        for (const auto& [i, c] : terms) v += c * x(i);
        return v;
    }
};

inline LinExpr operator+(LinExpr a, const LinExpr& b) { a += b; return a; }
inline LinExpr operator*(double s, LinExpr e) { e *= s; return e; }

// Row layout of the cone product: zero (equality) rows first, then scalar
// non-negative rows, then second-order cone blocks in order.
struct ConeLayout {
    int zero = 0;
    int nonneg = 0;
    std::vector<int> soc;

    int rows() const
    {
        int r = zero + nonneg;
        for (int d : soc) r += d;
        return r;
    }
    // Barrier degree: one per ray, one per second-order cone.
    int degree() const { return nonneg + static_cast<int>(soc.size()); }
};

// minimize c'x  subject to  A x + s = b,  s in K(layout).
struct ConicProgram {
    int num_vars = 0;
    Eigen::SparseMatrix<double> a;
    Eigen::VectorXd b;
    Eigen::VectorXd c;
    ConeLayout cones;

    // Optional names for debugging dumps; may be empty.
    std::vector<std::string> var_names;
    std::vector<std::string> row_labels; // one per constraint block, not per row

    void validate() const; // throws std::invalid_argument on malformed data
};

// Incremental builder. Rows may be added in any order; build() emits the
// canonical zero/nonneg/soc layout.
class ProgramBuilder {
public:
    int add_var(std::string name);
    std::vector<int> add_vars(const std::string& prefix, int n);
    int num_vars() const { return static_cast<int>(names_.size()); }

    // expr == 0
    void add_zero(LinExpr expr, std::string label);
    // expr >= 0
    void add_nonneg(LinExpr expr, std::string label);
    // || entries[1..] || <= entries[0]
    void add_soc(std::vector<LinExpr> entries, std::string label);

    // minimize expr (constant offset is dropped)
    void set_objective_min(const LinExpr& expr);
    // maximize expr
    void set_objective_max(LinExpr expr);

    ConicProgram build() const;

private:
    std::vector<std::string> names_;
    std::vector<std::pair<LinExpr, std::string>> zero_, nonneg_;
    std::vector<std::pair<std::vector<LinExpr>, std::string>> soc_;
    LinExpr objective_;
};

// Plain-text round-trippable dump. Format (whitespace separated):
//   socp 1
//   vars <n> rows <m> nnz <k>
//   cones zero <nz> nonneg <nn> soc <count> <dim...>
//   c <n values>
//   b <m values>
//   A                      (then k lines of "row col value", zero-based)
// Values are printed with enough digits to round-trip doubles exactly.
std::string to_text(const ConicProgram& p);
ConicProgram from_text(const std::string& text);

} // namespace secswipt

#endif
