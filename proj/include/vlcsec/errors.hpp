#ifndef VLCSEC_ERRORS_HPP
#define VLCSEC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace vlcsec {

// Thrown when an iterative numerical scheme fails to reach its target
// accuracy within its evaluation budget.  what() carries diagnostics
// (achieved error, evaluation count) so callers can report them.
class numerical_error : public std::runtime_error {
public:
    numerical_error(const std::string& msg, double achieved_error, long evaluations)
        : std::runtime_error(msg + " (error=" + std::to_string(achieved_error) +
                             ", evaluations=" + std::to_string(evaluations) + ")"),
          achieved_error_(achieved_error),
          evaluations_(evaluations) {}

    double achieved_error() const noexcept { return achieved_error_; }
    long evaluations() const noexcept { return evaluations_; }

private:
    double achieved_error_;
    long evaluations_;
};

} // namespace vlcsec

#endif
