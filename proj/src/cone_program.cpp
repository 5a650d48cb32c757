#include "secswipt/cone_program.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace secswipt {

void ConicProgram::validate() const
{
    if (num_vars < 0) throw std::invalid_argument("negative variable count");
    if (cones.zero < 0 || cones.nonneg < 0) throw std::invalid_argument("negative cone size");
    for (int d : cones.soc)
        if (d < 1) throw std::invalid_argument("second-order cone must have dimension >= 1");
    const int m = cones.rows();
    if (a.rows() != m || a.cols() != num_vars) throw std::invalid_argument("A shape mismatch");
    if (b.size() != m) throw std::invalid_argument("b size mismatch");
    if (c.size() != num_vars) throw std::invalid_argument("c size mismatch");
    if (!b.allFinite() || !c.allFinite()) throw std::invalid_argument("non-finite problem data");
    for (int j = 0; j < a.outerSize(); ++j)
        for (Eigen::SparseMatrix<double>::InnerIterator it(a, j); it; ++it)
            if (!std::isfinite(it.value())) throw std::invalid_argument("non-finite matrix entry");
}

int ProgramBuilder::add_var(std::string name)
{
    names_.push_back(std::move(name));
    return static_cast<int>(names_.size()) - 1;
}

std::vector<int> ProgramBuilder::add_vars(const std::string& prefix, int n)
{
    std::vector<int> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = add_var(prefix + "[" + std::to_string(i) + "]");
    return idx;
}

void ProgramBuilder::add_zero(LinExpr expr, std::string label)
{
    zero_.emplace_back(std::move(expr), std::move(label));
}

void ProgramBuilder::add_nonneg(LinExpr expr, std::string label)
{
    nonneg_.emplace_back(std::move(expr), std::move(label));
}

void ProgramBuilder::add_soc(std::vector<LinExpr> entries, std::string label)
{
    if (entries.empty()) throw std::invalid_argument("empty cone block");
    soc_.emplace_back(std::move(entries), std::move(label));
}

void ProgramBuilder::set_objective_min(const LinExpr& expr)
{
    objective_ = expr;
}

void ProgramBuilder::set_objective_max(LinExpr expr)
{
    expr *= -1.0;
    objective_ = std::move(expr);
}

ConicProgram ProgramBuilder::build() const
{
    ConicProgram p;
    p.num_vars = num_vars();
    p.var_names = names_;
    p.cones.zero = static_cast<int>(zero_.size());
    p.cones.nonneg = static_cast<int>(nonneg_.size());
    for (const auto& [entries, label] : soc_)
        p.cones.soc.push_back(static_cast<int>(entries.size()));

    const int m = p.cones.rows();
    p.b = Eigen::VectorXd::Zero(m);
    p.c = Eigen::VectorXd::Zero(p.num_vars);
    for (const auto& [i, coeff] : objective_.terms) p.c(i) += coeff;

    // s = b - A x must equal each row expression, so A gets the negated
    // coefficients and b the constant.
    std::vector<Eigen::Triplet<double>> trips;
    int row = 0;
    auto emit_row = [&](const LinExpr& e) {
        p.b(row) = e.constant;
        for (const auto& [i, coeff] : e.terms) {
            if (i < 0 || i >= p.num_vars) throw std::invalid_argument("row references unknown variable");
            trips.emplace_back(row, i, -coeff);
        }
        ++row;
    };

    for (const auto& [e, label] : zero_) {
        p.row_labels.push_back(label);
        emit_row(e);
    }
    for (const auto& [e, label] : nonneg_) {
        p.row_labels.push_back(label);
        emit_row(e);
    }
    for (const auto& [entries, label] : soc_) {
        p.row_labels.push_back(label);
        for (const auto& e : entries) emit_row(e);
    }

    p.a.resize(m, p.num_vars);
    p.a.setFromTriplets(trips.begin(), trips.end()); // duplicate (row,col) pairs are summed
    p.a.makeCompressed();
    p.validate();
    return p;
}

std::string to_text(const ConicProgram& p)
{
    std::ostringstream out;
    out.precision(17);
    out << "socp 1\n";
    out << "vars " << p.num_vars << " rows " << p.cones.rows() << " nnz " << p.a.nonZeros() << "\n";
    out << "cones zero " << p.cones.zero << " nonneg " << p.cones.nonneg
        << " soc " << p.cones.soc.size();
    for (int d : p.cones.soc) out << " " << d;
    out << "\n";
    out << "c";
    for (int i = 0; i < p.c.size(); ++i) out << " " << p.c(i);
    out << "\nb";
    for (int i = 0; i < p.b.size(); ++i) out << " " << p.b(i);
    out << "\nA\n";
    for (int j = 0; j < p.a.outerSize(); ++j)
        for (Eigen::SparseMatrix<double>::InnerIterator it(p.a, j); it; ++it)
            out << it.row() << " " << it.col() << " " << it.value() << "\n";
    return out.str();
}

ConicProgram from_text(const std::string& text)
{
    std::istringstream in(text);
    std::string tok;
    int version = 0;
    if (!(in >> tok >> version) || tok != "socp" || version != 1)
        throw std::invalid_argument("bad program header");

    ConicProgram p;
    int m = 0;
    long nnz = 0;
    if (!(in >> tok >> p.num_vars) || tok != "vars") throw std::invalid_argument("expected 'vars'");
    if (!(in >> tok >> m) || tok != "rows") throw std::invalid_argument("expected 'rows'");
    if (!(in >> tok >> nnz) || tok != "nnz") throw std::invalid_argument("expected 'nnz'");

    std::size_t soc_count = 0;
    if (!(in >> tok) || tok != "cones") throw std::invalid_argument("expected 'cones'");
    if (!(in >> tok >> p.cones.zero) || tok != "zero") throw std::invalid_argument("expected 'zero'");
    if (!(in >> tok >> p.cones.nonneg) || tok != "nonneg") throw std::invalid_argument("expected 'nonneg'");
    if (!(in >> tok >> soc_count) || tok != "soc") throw std::invalid_argument("expected 'soc'");
    p.cones.soc.resize(soc_count);
    for (auto& d : p.cones.soc)
        if (!(in >> d)) throw std::invalid_argument("truncated cone list");
    if (p.cones.rows() != m) throw std::invalid_argument("cone layout does not match row count");

    p.c.resize(p.num_vars);
    if (!(in >> tok) || tok != "c") throw std::invalid_argument("expected 'c'");
    for (int i = 0; i < p.num_vars; ++i)
        if (!(in >> p.c(i))) throw std::invalid_argument("truncated c");
    p.b.resize(m);
    if (!(in >> tok) || tok != "b") throw std::invalid_argument("expected 'b'");
    for (int i = 0; i < m; ++i)
        if (!(in >> p.b(i))) throw std::invalid_argument("truncated b");
    if (!(in >> tok) || tok != "A") throw std::invalid_argument("expected 'A'");

    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(nnz));
    for (long t = 0; t < nnz; ++t) {
        int i = 0, j = 0;
        double v = 0.0;
        if (!(in >> i >> j >> v)) throw std::invalid_argument("truncated triplet list");
        if (i < 0 || i >= m || j < 0 || j >= p.num_vars)
            throw std::invalid_argument("triplet index out of range");
        trips.emplace_back(i, j, v);
    }
    p.a.resize(m, p.num_vars);
    p.a.setFromTriplets(trips.begin(), trips.end());
    p.a.makeCompressed();
    p.validate();
    return p;
}

} // namespace secswipt
