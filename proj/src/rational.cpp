#include "qdlab/rational.hpp"

namespace qdlab {

ExactRational ExactRational::parse(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      return ExactRational(mpz_class(text), mpz_class(1));
    }
    mpz_class num(text.substr(0, slash));
    mpz_class den(text.substr(slash + 1));
    return ExactRational(num, den);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("ExactRational: cannot parse '" + text + "'");
  }
}

ExactRational ExactRational::pow(unsigned long e) const {
  mpz_class num, den;
  mpz_pow_ui(num.get_mpz_t(), v_.get_num().get_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), v_.get_den().get_mpz_t(), e);
  return ExactRational(num, den);
}

std::string ExactRational::to_string() const {
  return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

}  // namespace qdlab
