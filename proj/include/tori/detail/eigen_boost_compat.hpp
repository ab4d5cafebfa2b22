#pragma once

// Boost.Multiprecision (<= 1.75) probes candidate constructor arguments with
// detail::is_byte_container, which dereferences C::const_iterator.  Eigen 3.4
// matrices expose const_iterator = void for two-dimensional shapes, so the
// probe hard-errors inside std::iterator_traits instead of failing SFINAE.
// Every overload-resolution touch point between an Eigen expression and a
// cpp_int scalar hits this.  Declaring the affected Eigen templates as
// non-byte-containers restores the intended (negative) answer.

#include <Eigen/Core>

#include <boost/multiprecision/traits/is_byte_container.hpp>

namespace boost {
namespace multiprecision {
namespace detail {

template <class S, int R, int C, int O, int MR, int MC>
struct is_byte_container<Eigen::Matrix<S, R, C, O, MR, MC>> : public boost::false_type {};

template <class X, int R, int C, bool P>
struct is_byte_container<Eigen::Block<X, R, C, P>> : public boost::false_type {};

template <class L, class R, int O>
struct is_byte_container<Eigen::Product<L, R, O>> : public boost::false_type {};

template <class Op, class L, class R>
struct is_byte_container<Eigen::CwiseBinaryOp<Op, L, R>> : public boost::false_type {};

template <class Op, class X>
struct is_byte_container<Eigen::CwiseUnaryOp<Op, X>> : public boost::false_type {};

template <class Op, class X>
struct is_byte_container<Eigen::CwiseNullaryOp<Op, X>> : public boost::false_type {};

template <class X>
struct is_byte_container<Eigen::Transpose<X>> : public boost::false_type {};

// Overload resolution also probes the CRTP base classes.
template <class D>
struct is_byte_container<Eigen::MatrixBase<D>> : public boost::false_type {};

template <class D>
struct is_byte_container<Eigen::DenseBase<D>> : public boost::false_type {};

template <class D>
struct is_byte_container<Eigen::ArrayBase<D>> : public boost::false_type {};

template <class D>
struct is_byte_container<Eigen::PlainObjectBase<D>> : public boost::false_type {};

template <class D>
struct is_byte_container<Eigen::EigenBase<D>> : public boost::false_type {};

}  // namespace detail
}  // namespace multiprecision
}  // namespace boost
