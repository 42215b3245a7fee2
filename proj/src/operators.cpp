#include "pgbessel/operators.hpp"

#include <sstream>

#include "pgbessel/error.hpp"

namespace pgb {

OperatorSequence::OperatorSequence(SpaceSpec domain, std::vector<SpaceSpec> codomains,
                                   std::vector<Eigen::MatrixXd> mats, Exponent frame_exponent)
    : domain_(domain),
      codomains_(std::move(codomains)),
      mats_(std::move(mats)),
      frame_exponent_(frame_exponent) {
  if (mats_.empty()) throw Error(ErrorCode::invalid_argument, "operator sequence is empty");
  if (mats_.size() != codomains_.size()) {
    throw Error(ErrorCode::shape_mismatch, "one codomain per operator is required");
  }
  for (std::size_t i = 0; i < mats_.size(); ++i) {
    const auto& m = mats_[i];
    if (static_cast<std::size_t>(m.rows()) != codomains_[i].dim ||
        static_cast<std::size_t>(m.cols()) != domain_.dim) {
      std::ostringstream os;
      os << "operator " << i << " has shape " << m.rows() << "x" << m.cols() << ", expected "
         << codomains_[i].dim << "x" << domain_.dim;
      throw Error(ErrorCode::shape_mismatch, os.str());
    }
    if (!m.allFinite()) {
      throw Error(ErrorCode::invalid_argument, "operator entries must be finite");
    }
  }
}

std::size_t OperatorSequence::stacked_rows() const {
  std::size_t n = 0;
  for (const auto& c : codomains_) n += c.dim;
  return n;
}

MixedNormSpace OperatorSequence::analysis_space() const {
  return MixedNormSpace(codomains_, frame_exponent_);
}

OperatorSequence OperatorSequence::with_mats(std::vector<Eigen::MatrixXd> mats) const {
  return OperatorSequence(domain_, codomains_, std::move(mats), frame_exponent_);
}

OperatorSequence OperatorSequence::minus(const OperatorSequence& other) const {
  if (other.size() != size() || !(other.domain() == domain_)) {
    throw Error(ErrorCode::shape_mismatch, "sequences differ in length or domain");
  }
  std::vector<Eigen::MatrixXd> diff;
  diff.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (other.mat(i).rows() != mats_[i].rows()) {
      throw Error(ErrorCode::shape_mismatch, "sequences differ in codomain dimensions");
    }
    diff.push_back(mats_[i] - other.mat(i));
  }
  return with_mats(std::move(diff));
}

OperatorSequence OperatorSequence::scaled(double c) const {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(size());
  for (const auto& m : mats_) out.push_back(c * m);
  return with_mats(std::move(out));
}

OperatorSequence OperatorSequence::permuted(const std::vector<std::size_t>& order) const {
  if (order.size() != size()) throw Error(ErrorCode::invalid_argument, "permutation length mismatch");
  std::vector<SpaceSpec> cods;
  std::vector<Eigen::MatrixXd> mats;
  for (auto k : order) {
    cods.push_back(codomains_.at(k));
    mats.push_back(mats_.at(k));
  }
  return OperatorSequence(domain_, std::move(cods), std::move(mats), frame_exponent_);
}

std::string_view to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::exact: return "exact";
    case CertificateKind::upper_certificate: return "upper_certificate";
    case CertificateKind::lower_certificate: return "lower_certificate";
    case CertificateKind::lower_estimate: return "lower_estimate";
    case CertificateKind::upper_estimate: return "upper_estimate";
  }
  return "unknown";
}

Eigen::MatrixXd stacked_matrix(const OperatorSequence& seq) {
  Eigen::MatrixXd s(static_cast<Eigen::Index>(seq.stacked_rows()),
                    static_cast<Eigen::Index>(seq.domain().dim));
  Eigen::Index row = 0;
  for (const auto& m : seq.mats()) {
    s.middleRows(row, m.rows()) = m;
    row += m.rows();
  }
  return s;
}

Eigen::MatrixXd synthesis_matrix(const OperatorSequence& seq) {
  return stacked_matrix(seq).transpose();
}

ProductVector analysis_apply(const OperatorSequence& seq, const Vector& x) {
  if (x.dim() != seq.domain().dim) {
    throw Error(ErrorCode::dimension_mismatch, "vector is not in the domain of the sequence");
  }
  std::vector<Vector> blocks;
  blocks.reserve(seq.size());
  for (std::size_t i = 0; i < seq.size(); ++i) {
    blocks.emplace_back(seq.mat(i) * x.entries(), seq.codomains()[i]);
  }
  return ProductVector(std::move(blocks), seq.frame_exponent());
}

Vector synthesis_apply(const OperatorSequence& seq, const ProductVector& g) {
  if (g.blocks().size() != seq.size()) {
    throw Error(ErrorCode::dimension_mismatch, "block count differs from sequence length");
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(seq.domain().dim));
  for (std::size_t i = 0; i < seq.size(); ++i) {
    const auto& b = g.blocks()[i];
    if (b.dim() != seq.codomains()[i].dim) {
      throw Error(ErrorCode::dimension_mismatch, "block does not lie in Y_i^*");
    }
    out.noalias() += seq.mat(i).transpose() * b.entries();
  }
  return Vector(std::move(out), seq.domain().dual());
}

}  // namespace pgb
