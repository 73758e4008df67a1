#pragma once

#include <utility>
#include <vector>

#include "mkcs/conic.hpp"

namespace mkcs {

/// Incremental assembly of a ConicProgram. Rows are expressions
/// const + sum(coeff * var) whose value becomes the slack of the block
/// currently open; blocks appear in the order they are begun.
class ConicBuilder {
public:
    int add_var(double cost = 0.0) {
        cost_.push_back(cost);
        return nvars_++;
    }
    void set_cost(int var, double c) { cost_[var] = c; }

    void begin_zero() { blocks_.push_back(conic::ConeSpec::zero(0)); }
    void begin_nonneg() { blocks_.push_back(conic::ConeSpec::nonneg(0)); }
    void begin_soc() { blocks_.push_back(conic::ConeSpec::second_order(0)); }
    void begin_psd(int order) {
        blocks_.push_back({conic::ConeType::Psd, 0, order});
    }

    int add_row(double constant) {
        b_.push_back(constant);
        ++blocks_.back().dim;
        return nrows_++;
    }
    void add_term(int row, int var, double coeff) {
        if (var < 0) return;  // structural zero
        if (coeff != 0.0) trips_.emplace_back(row, var, -coeff);
    }
    int add_row(double constant, std::initializer_list<std::pair<int, double>> terms) {
        int r = add_row(constant);
        for (auto [v, cf] : terms) add_term(r, v, cf);
        return r;
    }

    int rows() const { return nrows_; }
    int vars() const { return nvars_; }

    conic::ConicProgram finish() const {
        conic::ConicProgram p;
        p.c = Eigen::Map<const Eigen::VectorXd>(cost_.data(), nvars_);
        p.b = Eigen::Map<const Eigen::VectorXd>(b_.data(), nrows_);
        p.A.resize(nrows_, nvars_);
        p.A.setFromTriplets(trips_.begin(), trips_.end());
        p.A.makeCompressed();
        for (const auto& blk : blocks_) {
            if (blk.type == conic::ConeType::Psd && blk.dim != conic::svec_dim(blk.order))
                throw std::logic_error("ConicBuilder: psd block row count mismatch");
            if (blk.dim > 0) p.cones.blocks.push_back(blk);
        }
        return p;
    }

private:
    int nvars_ = 0, nrows_ = 0;
    std::vector<double> cost_;
    std::vector<double> b_;
    std::vector<conic::ConeBlock> blocks_;
    std::vector<Eigen::Triplet<double>> trips_;
};

}  // namespace mkcs
