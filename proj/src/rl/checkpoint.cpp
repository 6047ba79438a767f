#include "ltlrl/rl/checkpoint.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ltlrl/errors.hpp"

namespace ltlrl::rl {

namespace {

constexpr const char* kMagic = "ltlrl-checkpoint 1";

void write_vector(std::ostream& out, const char* name, const Eigen::VectorXd& v) {
  out << name << ' ' << v.size() << '\n';
  char buf[64];
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%a", v(i));
    out << buf << (i + 1 == v.size() ? '\n' : ' ');
  }
  if (v.size() == 0) out << '\n';
}

/* istream's double extraction does not accept hexfloats, so tokens go
 * through strtod by hand. */
double read_double(std::istream& in, const std::string& where) {
  std::string tok;
  if (!(in >> tok)) throw Error("checkpoint truncated while reading " + where);
  const char* s = tok.c_str();
  char* end = nullptr;
  double v = std::strtod(s, &end);
  if (end == s || *end != '\0')
    throw Error("checkpoint has a malformed number in " + where + ": \"" + tok + "\"");
  return v;
}

Eigen::VectorXd read_vector(std::istream& in, const std::string& name) {
  std::string label;
  if (!(in >> label) || label != name)
    throw Error("checkpoint is missing section \"" + name + "\"");
  long long n = -1;
  if (!(in >> n) || n < 0) throw Error("checkpoint has a bad length for " + name);
  Eigen::VectorXd v(n);
  for (long long i = 0; i < n; ++i) v(i) = read_double(in, name);
  return v;
}

}  // namespace

void Checkpoint::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot write checkpoint: " + path);
  out << kMagic << '\n';
  out << "env " << env_kind << ' ' << obs_dim << ' ' << act_dim << '\n';
  out << "hidden " << hidden.size();
  for (std::size_t h : hidden) out << ' ' << h;
  out << '\n';
  write_vector(out, "policy", policy);
  write_vector(out, "critic_r", critic_r);
  out << "critic_c " << critic_c.size() << '\n';
  for (std::size_t k = 0; k < critic_c.size(); ++k)
    write_vector(out, ("channel" + std::to_string(k)).c_str(), critic_c[k]);
  Eigen::VectorXd lam(static_cast<Eigen::Index>(lambda.size()));
  for (std::size_t i = 0; i < lambda.size(); ++i) lam(static_cast<Eigen::Index>(i)) = lambda[i];
  write_vector(out, "lambda", lam);
  out << "rng " << rng.size() << '\n';
  for (const auto& [name, state] : rng) out << name << '\n' << state << '\n';
  out << "steps " << env_steps << ' ' << iteration << '\n';
  if (!out) throw Error("write failed for checkpoint: " + path);
}

Checkpoint Checkpoint::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open checkpoint: " + path);
  std::string line;
  if (!std::getline(in, line) || line != kMagic)
    throw Error("not a checkpoint file: " + path);

  Checkpoint ck;
  std::string label;
  if (!(in >> label) || label != "env") throw Error("checkpoint is missing the env line");
  if (!(in >> ck.env_kind >> ck.obs_dim >> ck.act_dim))
    throw Error("checkpoint has a malformed env line");
  long long n_hidden = -1;
  if (!(in >> label) || label != "hidden" || !(in >> n_hidden) || n_hidden < 0)
    throw Error("checkpoint has a malformed hidden line");
  for (long long i = 0; i < n_hidden; ++i) {
    std::size_t h = 0;
    if (!(in >> h)) throw Error("checkpoint truncated in hidden widths");
    ck.hidden.push_back(h);
  }
  ck.policy = read_vector(in, "policy");
  ck.critic_r = read_vector(in, "critic_r");
  long long n_c = -1;
  if (!(in >> label) || label != "critic_c" || !(in >> n_c) || n_c < 0)
    throw Error("checkpoint has a malformed critic_c count");
  for (long long k = 0; k < n_c; ++k)
    ck.critic_c.push_back(read_vector(in, "channel" + std::to_string(k)));
  Eigen::VectorXd lam = read_vector(in, "lambda");
  ck.lambda.assign(lam.data(), lam.data() + lam.size());
  long long n_rng = -1;
  if (!(in >> label) || label != "rng" || !(in >> n_rng) || n_rng < 0)
    throw Error("checkpoint has a malformed rng count");
  std::getline(in, line);  // finish the count line
  for (long long k = 0; k < n_rng; ++k) {
    std::string name, state;
    if (!std::getline(in, name) || !std::getline(in, state))
      throw Error("checkpoint truncated in rng streams");
    ck.rng.emplace_back(std::move(name), std::move(state));
  }
  if (!(in >> label) || label != "steps" || !(in >> ck.env_steps >> ck.iteration))
    throw Error("checkpoint is missing the steps line");
  return ck;
}

}  // namespace ltlrl::rl
