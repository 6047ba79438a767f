#include "ltlrl/rl/gae.hpp"

#include "ltlrl/errors.hpp"

namespace ltlrl::rl {

std::vector<double> gae(const std::vector<double>& x, const std::vector<double>& values,
                        const std::vector<std::uint8_t>& done, double gamma,
                        double lambda_gae) {
  if (values.size() != x.size() + 1)
    throw LengthMismatch("gae: need one value per step plus a bootstrap");
  if (done.size() != x.size()) throw LengthMismatch("gae: done flags misaligned");

  std::vector<double> adv(x.size());
  double carry = 0.0;
  for (std::size_t i = x.size(); i-- > 0;) {
    double open = done[i] ? 0.0 : 1.0;
    double delta = x[i] + gamma * open * values[i + 1] - values[i];
    carry = delta + gamma * lambda_gae * open * carry;
    adv[i] = carry;
  }
  return adv;
}

}  // namespace ltlrl::rl
