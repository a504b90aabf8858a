// Copyright 2026 The qknit authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "solvers.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <climits>
#include <cstdlib>
#include <cstring>
#include <functional>
#include <memory>

#include "error.hpp"

namespace qknit {

SolverBackend SolverBackend::internal() { return {}; }

SolverBackend SolverBackend::external(const std::string& path) {
  SolverBackend backend;
  backend.kind = ExternalSmt;
  if (!path.empty()) {
    backend.executable = path;
  } else if (const char* env = std::getenv("QKNIT_SMT_SOLVER")) {
    backend.executable = env;
  } else {
    throw Error(ErrorCode::InvalidArgument,
                "no SMT solver: pass a path or set QKNIT_SMT_SOLVER");
  }
  return backend;
}

// ---------------------------------------------------------------------------
// Child process plumbing
// ---------------------------------------------------------------------------

namespace {

double monotonic_now() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

class ChildProcess {
 public:
  explicit ChildProcess(const std::vector<std::string>& argv) {
    int to_child[2], from_child[2];
    if (pipe(to_child) != 0 || pipe(from_child) != 0) {
      throw Error(ErrorCode::SolverCrashed, "pipe() failed");
    }
    pid_ = fork();
    if (pid_ < 0) {
      throw Error(ErrorCode::SolverCrashed, "fork() failed");
    }
    if (pid_ == 0) {
      dup2(to_child[0], STDIN_FILENO);
      dup2(from_child[1], STDOUT_FILENO);
      close(to_child[0]);
      close(to_child[1]);
      close(from_child[0]);
      close(from_child[1]);
      std::vector<char*> cargv;
      for (const std::string& a : argv) {
        cargv.push_back(const_cast<char*>(a.c_str()));
      }
      cargv.push_back(nullptr);
      execvp(cargv[0], cargv.data());
      _exit(127);
    }
    close(to_child[0]);
    close(from_child[1]);
    in_fd_ = to_child[1];
    out_fd_ = from_child[0];
    fcntl(in_fd_, F_SETFL, O_NONBLOCK);
    fcntl(out_fd_, F_SETFL, O_NONBLOCK);
    signal(SIGPIPE, SIG_IGN);
    if (const char* path = std::getenv("QKNIT_SOLVER_TRACE")) {
      trace_ = fopen(path, "ab");
    }
  }

  ~ChildProcess() {
    close_stdin();
    if (out_fd_ >= 0) close(out_fd_);
    if (pid_ > 0) {
      kill(pid_, SIGKILL);
      waitpid(pid_, nullptr, 0);
    }
    if (trace_) fclose(trace_);
  }

  void close_stdin() {
    if (in_fd_ >= 0) {
      close(in_fd_);
      in_fd_ = -1;
    }
  }

  enum class PumpStatus { Complete, Eof, Timeout, Broken };

  /// Writes all input, draining output as needed to avoid pipe deadlock.
  PumpStatus send_all(const std::string& input, double deadline) {
    return pump(input, nullptr, deadline, true);
  }

  /// Reads until `complete` matches the accumulated output (null: read to
  /// EOF), the stream ends, or the deadline passes.
  PumpStatus read_until(const std::function<bool(const std::string&)>& complete,
                        double deadline) {
    return pump("", complete, deadline, false);
  }

  /// Pumps both pipe directions; `stop_when_sent` returns Complete once the
  /// input is fully written.
  PumpStatus pump(const std::string& input,
                  const std::function<bool(const std::string&)>& complete,
                  double deadline, bool stop_when_sent) {
    size_t written = 0;
    while (true) {
      if (complete && complete(output_)) return PumpStatus::Complete;
      if (stop_when_sent && written >= input.size()) return PumpStatus::Complete;
      const double remaining = deadline - monotonic_now();
      if (remaining <= 0) return PumpStatus::Timeout;

      struct pollfd fds[2];
      nfds_t nfds = 0;
      int out_slot = -1, in_slot = -1;
      if (out_fd_ >= 0) {
        out_slot = static_cast<int>(nfds);
        fds[nfds++] = {out_fd_, POLLIN, 0};
      }
      if (in_fd_ >= 0 && written < input.size()) {
        in_slot = static_cast<int>(nfds);
        fds[nfds++] = {in_fd_, POLLOUT, 0};
      }
      if (nfds == 0) return PumpStatus::Eof;

      const int timeout_ms =
          static_cast<int>(std::min(remaining * 1000.0, 100.0) + 1);
      const int rc = poll(fds, nfds, timeout_ms);
      if (rc < 0) {
        if (errno == EINTR) continue;
        return PumpStatus::Broken;
      }
      if (out_slot >= 0 && (fds[out_slot].revents & (POLLIN | POLLHUP))) {
        char buf[16384];
        const ssize_t n = read(out_fd_, buf, sizeof buf);
        if (n > 0) {
          output_.append(buf, static_cast<size_t>(n));
        } else if (n == 0) {
          close(out_fd_);
          out_fd_ = -1;
          if (complete && complete(output_)) return PumpStatus::Complete;
          return PumpStatus::Eof;
        }
      }
      if (in_slot >= 0 && (fds[in_slot].revents & (POLLOUT | POLLERR | POLLHUP))) {
        const ssize_t n =
            write(in_fd_, input.data() + written, input.size() - written);
        if (n > 0) {
          if (trace_) {
            fwrite(input.data() + written, 1, static_cast<size_t>(n), trace_);
            fflush(trace_);
          }
          written += static_cast<size_t>(n);
        } else if (n < 0 && errno != EAGAIN && errno != EINTR) {
          return PumpStatus::Broken;
        }
      }
    }
  }

  std::string& output() { return output_; }

  int exit_code() {
    if (pid_ <= 0) return -1;
    int status = 0;
    waitpid(pid_, &status, 0);
    pid_ = -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

 private:
  pid_t pid_ = -1;
  int in_fd_ = -1;
  int out_fd_ = -1;
  std::string output_;
  FILE* trace_ = nullptr;
};

// ---------------------------------------------------------------------------
// Model text parsing
// ---------------------------------------------------------------------------

struct Sexpr {
  bool is_atom = false;
  std::string atom;
  std::vector<Sexpr> items;
};

Sexpr parse_sexpr(const std::string& text, size_t& pos) {
  while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) {
    ++pos;
  }
  if (pos >= text.size()) {
    throw Error(ErrorCode::ModelParseError, "unexpected end of model text");
  }
  if (text[pos] == '(') {
    ++pos;
    Sexpr list;
    while (true) {
      while (pos < text.size() && isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
      }
      if (pos >= text.size()) {
        throw Error(ErrorCode::ModelParseError, "unbalanced parentheses");
      }
      if (text[pos] == ')') {
        ++pos;
        return list;
      }
      list.items.push_back(parse_sexpr(text, pos));
    }
  }
  Sexpr atom;
  atom.is_atom = true;
  while (pos < text.size() && !isspace(static_cast<unsigned char>(text[pos])) &&
         text[pos] != '(' && text[pos] != ')') {
    atom.atom.push_back(text[pos++]);
  }
  return atom;
}

ModelValue interpret_value(const Sexpr& v) {
  ModelValue out;
  if (v.is_atom) {
    if (v.atom == "true" || v.atom == "false") {
      out.is_bool = true;
      out.bool_value = v.atom == "true";
      return out;
    }
    out.int_value = std::stoll(v.atom);
    return out;
  }
  if (v.items.size() == 2 && v.items[0].is_atom && v.items[0].atom == "-") {
    out.int_value = -std::stoll(v.items[1].atom);
    return out;
  }
  throw Error(ErrorCode::ModelParseError, "unsupported model value shape");
}

Model parse_get_value_response(const std::string& text) {
  size_t pos = 0;
  const Sexpr root = parse_sexpr(text, pos);
  if (root.is_atom) {
    throw Error(ErrorCode::ModelParseError,
                "expected a list of bindings, got: " + text.substr(0, 200));
  }
  Model model;
  for (const Sexpr& pair : root.items) {
    if (pair.is_atom || pair.items.size() != 2 || !pair.items[0].is_atom) {
      throw Error(ErrorCode::ModelParseError,
                  "bad model binding in: " + text.substr(0, 200));
    }
    model[pair.items[0].atom] = interpret_value(pair.items[1]);
  }
  return model;
}

/// Scans the verdict token in accumulated output starting at `from`.
std::optional<std::string> find_verdict(const std::string& text, size_t from) {
  static const char* kVerdicts[] = {"sat", "unsat", "unknown"};
  size_t pos = from;
  while (pos < text.size()) {
    size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) break;
    std::string line = text.substr(pos, eol - pos);
    for (const char* v : kVerdicts) {
      if (line == v) return line;
    }
    if (line.rfind("(error", 0) == 0) return line;
    pos = eol + 1;
  }
  return std::nullopt;
}

/// Offset just past the first balanced s-expression at/after `from`,
/// or npos when incomplete.
size_t balanced_end(const std::string& text, size_t from) {
  int depth = 0;
  bool seen = false;
  for (size_t i = from; i < text.size(); ++i) {
    if (text[i] == '(') {
      ++depth;
      seen = true;
    } else if (text[i] == ')') {
      --depth;
      if (seen && depth == 0) return i + 1;
    }
  }
  return std::string::npos;
}

}  // namespace

SolveResult solve_external(const std::string& smtlib2,
                           const SolverBackend& backend) {
  if (backend.kind != SolverBackend::ExternalSmt || backend.executable.empty()) {
    throw Error(ErrorCode::InvalidArgument, "external backend needs an executable");
  }
  std::vector<std::string> argv{backend.executable};
  argv.insert(argv.end(), backend.extra_args.begin(), backend.extra_args.end());

  ChildProcess child(argv);
  const double deadline = monotonic_now() + backend.time_limit_seconds;
  auto status = child.send_all(smtlib2, deadline);
  if (status == ChildProcess::PumpStatus::Timeout) {
    return {SolveStatus::Timeout, {}, "wall-clock limit reached"};
  }
  // Writing finished or EOF; close stdin and drain the rest.
  child.close_stdin();
  status = child.read_until(nullptr, deadline);
  if (status == ChildProcess::PumpStatus::Timeout) {
    return {SolveStatus::Timeout, {}, "wall-clock limit reached"};
  }

  const std::string& out = child.output();
  const auto verdict = find_verdict(out, 0);
  if (!verdict) {
    const int code = child.exit_code();
    throw Error(ErrorCode::SolverCrashed,
                "solver exited (code " + std::to_string(code) +
                    ") without a verdict: " + out.substr(0, 200));
  }
  if (*verdict == "unsat") return {SolveStatus::Unsat, {}, *verdict};
  if (*verdict == "unknown" || verdict->rfind("(error", 0) == 0) {
    return {SolveStatus::Error, {}, *verdict};
  }

  SolveResult result;
  result.status = SolveStatus::Sat;
  result.detail = *verdict;
  const size_t after = out.find("sat") + 3;
  const size_t end = balanced_end(out, after);
  if (end != std::string::npos) {
    result.model = parse_get_value_response(
        out.substr(after, end - after));
  }
  return result;
}

// ---------------------------------------------------------------------------
// Internal exact search
// ---------------------------------------------------------------------------

namespace {

struct ExactContext {
  const ConstraintSystem& sys;
  const CuttingGraph& graph;
  uint32_t num_vertices;
  uint32_t num_partitions;
  uint32_t qmax_cap;
  bool minimize_qubits;
  int64_t budget_fp;  // INT64_MAX when absent
  int64_t lb_grouped; // sound per-cut floor for groupable edges

  // Edges keyed by their later endpoint.
  struct Back {
    uint32_t edge;
    uint32_t other;
    bool wire;
  };
  std::vector<std::vector<Back>> back_edges;
  std::vector<bool> is_first_vertex;
  std::vector<int> pinned;  // -1 when free
  bool canonical = true;    // labels interchangeable: enumerate RGS order

  // Search state.
  std::vector<int> label;
  std::vector<uint32_t> base_q;
  std::vector<uint32_t> cut_stack;
  int64_t partial_cost = 0;

  // Incumbent.
  bool found = false;
  int64_t best_objective = 0;
  std::vector<int> best_label;
  std::vector<uint32_t> best_cuts;
  std::vector<uint32_t> best_grouped;
  int64_t best_cost_fp = 0;
  uint64_t nodes = 0;
  double deadline = 0;
  bool timed_out = false;
};

/// Maximum Bell group size under per-partition ancilla slack; edges consume
/// one slot at each endpoint partition.
uint32_t max_groupable(const std::vector<std::pair<int, int>>& edges, size_t idx,
                       std::vector<int>& slack, uint32_t best_possible,
                       uint32_t current, uint32_t& best) {
  if (current > best) best = current;
  if (idx >= edges.size() || current + (edges.size() - idx) <= best) {
    return best;
  }
  const auto [pu, pv] = edges[idx];
  if (slack[pu] >= 1 && slack[pv] >= (pu == pv ? 2 : 1)) {
    --slack[pu];
    --slack[pv];
    max_groupable(edges, idx + 1, slack, best_possible, current + 1, best);
    ++slack[pu];
    ++slack[pv];
  }
  max_groupable(edges, idx + 1, slack, best_possible, current, best);
  return best;
}

/// Lexicographically first subset of the given size that fits the slack.
bool pick_group_witness(const std::vector<std::pair<int, int>>& edges,
                        const std::vector<uint32_t>& ids, size_t idx,
                        std::vector<int>& slack, uint32_t need,
                        std::vector<uint32_t>& out) {
  if (need == 0) return true;
  if (edges.size() - idx < need) return false;
  const auto [pu, pv] = edges[idx];
  if (slack[pu] >= 1 && slack[pv] >= (pu == pv ? 2 : 1)) {
    --slack[pu];
    --slack[pv];
    out.push_back(ids[idx]);
    if (pick_group_witness(edges, ids, idx + 1, slack, need - 1, out)) return true;
    out.pop_back();
    ++slack[pu];
    ++slack[pv];
  }
  return pick_group_witness(edges, ids, idx + 1, slack, need, out);
}

void exact_leaf(ExactContext& ctx) {
  if (ctx.sys.require_nonempty) {
    uint64_t used_mask = 0;
    for (int p : ctx.label) used_mask |= uint64_t{1} << p;
    if (used_mask != (uint64_t{1} << ctx.num_partitions) - 1) return;
  }
  if (ctx.sys.max_cuts && ctx.cut_stack.size() > *ctx.sys.max_cuts) return;

  // Candidate Bell group: groupable cut edges with per-partition slack.
  std::vector<std::pair<int, int>> group_parts;
  std::vector<uint32_t> group_ids;
  int64_t individual_total = 0;
  for (uint32_t e : ctx.cut_stack) {
    individual_total += ctx.sys.edge_weight[e];
    if (ctx.sys.edge_groupable[e]) {
      group_parts.push_back({ctx.label[ctx.graph.edges[e].u],
                             ctx.label[ctx.graph.edges[e].v]});
      group_ids.push_back(e);
    }
  }
  std::vector<int> slack(ctx.num_partitions);
  for (uint32_t p = 0; p < ctx.num_partitions; ++p) {
    slack[p] = static_cast<int>(ctx.qmax_cap) - static_cast<int>(ctx.base_q[p]);
    if (slack[p] < 0) return;
  }
  uint32_t kmax = 0;
  max_groupable(group_parts, 0, slack, 0, 0, kmax);

  const int64_t w9 = group_ids.empty() ? 0 : ctx.sys.edge_weight[group_ids[0]];
  auto cost_at = [&](uint32_t k) {
    return individual_total - static_cast<int64_t>(k) * w9 +
           ctx.sys.group_cost_chain[k];
  };

  if (!ctx.minimize_qubits) {
    // Grouping all eligible cuts is optimal whenever two or more fit.
    const uint32_t k = kmax >= 2 ? kmax : 0;
    const int64_t cost = cost_at(k);
    if (cost > ctx.budget_fp) return;
    if (ctx.found && cost >= ctx.best_objective) return;
    std::vector<uint32_t> grouped;
    if (k > 0) {
      std::vector<int> scratch = slack;
      pick_group_witness(group_parts, group_ids, 0, scratch, k, grouped);
    }
    ctx.found = true;
    ctx.best_objective = cost;
    ctx.best_cost_fp = cost;
    ctx.best_label = ctx.label;
    ctx.best_cuts = ctx.cut_stack;
    ctx.best_grouped = grouped;
    return;
  }

  // Qubit-minimization: grouping only ever adds ancillas, so group just
  // enough cuts to honor the budget, then spread them to flatten the peak.
  uint32_t k_needed = 0;
  while (k_needed <= kmax && cost_at(k_needed) > ctx.budget_fp) ++k_needed;
  if (k_needed > kmax) return;

  uint32_t base_max = 0;
  for (uint32_t p = 0; p < ctx.num_partitions; ++p) {
    base_max = std::max(base_max, ctx.base_q[p]);
  }
  uint32_t best_peak;
  std::vector<uint32_t> best_subset;
  if (k_needed == 0) {
    best_peak = base_max;
  } else {
    // Small exhaustive scan over subsets of the needed size.
    best_peak = ctx.qmax_cap + 1;
    std::vector<uint32_t> chosen;
    std::vector<uint32_t> load(ctx.num_partitions, 0);
    std::function<void(size_t, uint32_t)> scan = [&](size_t idx, uint32_t left) {
      if (left == 0) {
        uint32_t peak = 0;
        for (uint32_t p = 0; p < ctx.num_partitions; ++p) {
          peak = std::max(peak, ctx.base_q[p] + load[p]);
        }
        if (peak < best_peak) {
          best_peak = peak;
          best_subset = chosen;
        }
        return;
      }
      if (group_parts.size() - idx < left) return;
      const auto [pu, pv] = group_parts[idx];
      load[pu]++;
      load[pv]++;
      chosen.push_back(group_ids[idx]);
      scan(idx + 1, left - 1);
      chosen.pop_back();
      load[pu]--;
      load[pv]--;
      scan(idx + 1, left);
    };
    scan(0, k_needed);
    if (best_peak > ctx.qmax_cap) return;
  }
  if (ctx.found && static_cast<int64_t>(best_peak) >= ctx.best_objective) return;
  ctx.found = true;
  ctx.best_objective = static_cast<int64_t>(best_peak);
  ctx.best_cost_fp = cost_at(k_needed);
  ctx.best_label = ctx.label;
  ctx.best_cuts = ctx.cut_stack;
  ctx.best_grouped = best_subset;
}

void exact_descend(ExactContext& ctx, uint32_t v, uint32_t used) {
  if (ctx.timed_out) return;
  if ((++ctx.nodes & 0xfff) == 0 && monotonic_now() > ctx.deadline) {
    ctx.timed_out = true;
    return;
  }
  if (v == ctx.num_vertices) {
    exact_leaf(ctx);
    return;
  }
  // Unopened partitions must still be fillable.
  if (ctx.canonical && ctx.sys.require_nonempty &&
      ctx.num_partitions - used > ctx.num_vertices - v) {
    return;
  }

  const uint32_t limit = ctx.canonical
                             ? std::min(used + 1, ctx.num_partitions)
                             : ctx.num_partitions;  // canonical label order
  const int pin = ctx.pinned[v];
  for (uint32_t p = pin >= 0 ? static_cast<uint32_t>(pin) : 0; p < limit; ++p) {
    if (pin >= 0 && p != static_cast<uint32_t>(pin)) break;
    bool feasible = true;
    int64_t added_cost = 0;
    uint32_t added_cuts = 0;
    std::vector<std::pair<uint32_t, uint32_t>> q_bumps;

    for (const auto& back : ctx.back_edges[v]) {
      if (ctx.label[back.other] == static_cast<int>(p)) continue;
      if (!ctx.sys.edge_cuttable[back.edge]) {
        feasible = false;
        break;
      }
      added_cost += ctx.sys.edge_groupable[back.edge]
                        ? std::min(ctx.sys.edge_weight[back.edge], ctx.lb_grouped)
                        : ctx.sys.edge_weight[back.edge];
      ++added_cuts;
      if (back.wire) q_bumps.push_back({p, 1});
    }
    if (!feasible) continue;
    if (ctx.is_first_vertex[v]) q_bumps.push_back({p, 1});

    const int64_t new_cost = ctx.partial_cost + added_cost;
    if (new_cost > ctx.budget_fp) continue;
    if (!ctx.minimize_qubits && ctx.found && new_cost >= ctx.best_objective) {
      continue;
    }
    if (ctx.sys.max_cuts &&
        ctx.cut_stack.size() + added_cuts > *ctx.sys.max_cuts) {
      continue;
    }

    bool q_ok = true;
    for (const auto& [part, delta] : q_bumps) {
      ctx.base_q[part] += delta;
      if (ctx.base_q[part] > ctx.qmax_cap) q_ok = false;
      if (ctx.minimize_qubits && ctx.found &&
          static_cast<int64_t>(ctx.base_q[part]) >= ctx.best_objective) {
        q_ok = false;
      }
    }

    if (q_ok) {
      const int64_t saved_cost = ctx.partial_cost;
      const size_t saved_cuts = ctx.cut_stack.size();
      ctx.partial_cost = new_cost;
      for (const auto& back : ctx.back_edges[v]) {
        if (ctx.label[back.other] != static_cast<int>(p)) {
          ctx.cut_stack.push_back(back.edge);
        }
      }
      ctx.label[v] = static_cast<int>(p);
      exact_descend(ctx, v + 1, std::max(used, p + 1));
      ctx.label[v] = -1;
      ctx.partial_cost = saved_cost;
      ctx.cut_stack.resize(saved_cuts);
    }

    for (const auto& [part, delta] : q_bumps) {
      ctx.base_q[part] -= delta;
    }
    if (ctx.timed_out) return;
  }
}

}  // namespace

MinimizeResult solve_exact(const PartitionProblem& problem) {
  const ConstraintSystem sys = encode(problem);
  const CuttingGraph& graph = *problem.graph;
  const uint32_t num_vertices = static_cast<uint32_t>(graph.vertices.size());
  if (num_vertices > 64) {
    throw Error(ErrorCode::TooLarge,
                "exact search handles at most 64 vertices, got " +
                    std::to_string(num_vertices));
  }

  ExactContext ctx{sys, graph};
  ctx.num_vertices = num_vertices;
  ctx.num_partitions = problem.num_partitions;
  ctx.qmax_cap = problem.max_qubits_per_partition;
  ctx.minimize_qubits = sys.minimize_qubits;
  ctx.budget_fp = sys.budget_fp ? *sys.budget_fp : INT64_MAX;
  ctx.lb_grouped = cost_fp_floor(4.0);
  ctx.back_edges.resize(num_vertices);
  for (const CutEdge& e : graph.edges) {
    const uint32_t later = std::max(e.u, e.v);
    const uint32_t earlier = std::min(e.u, e.v);
    ctx.back_edges[later].push_back(
        {e.id, earlier, e.kind == CutEdgeKind::Wire});
  }
  ctx.is_first_vertex.assign(num_vertices, false);
  for (uint32_t vid : graph.first_vertices) ctx.is_first_vertex[vid] = true;
  ctx.pinned.assign(num_vertices, -1);
  for (const auto& [vertex, partition] : problem.pinned_vertices) {
    if (vertex >= num_vertices || partition < 0 ||
        partition >= static_cast<int>(problem.num_partitions)) {
      throw Error(ErrorCode::InvalidArgument, "pin outside the model");
    }
    ctx.pinned[vertex] = partition;
  }
  ctx.canonical = problem.pinned_vertices.empty();
  ctx.label.assign(num_vertices, -1);
  ctx.base_q.assign(problem.num_partitions, 0);
  ctx.deadline = monotonic_now() + 86400.0;

  exact_descend(ctx, 0, 0);

  MinimizeResult result;
  if (!ctx.found) {
    result.status = MinimizeResult::Unsat;
    return result;
  }
  PartitionSolution sol;
  sol.vertex_partition = ctx.best_label;
  sol.cut_edges = ctx.best_cuts;
  std::sort(sol.cut_edges.begin(), sol.cut_edges.end());
  sol.grouped_edges = ctx.best_grouped;
  std::sort(sol.grouped_edges.begin(), sol.grouped_edges.end());
  finalize_solution(problem, sol);
  sol.objective_value = ctx.minimize_qubits
                            ? static_cast<int64_t>(sol.max_qubits)
                            : ctx.best_cost_fp;
  sol.optimal = true;
  sol.backend = "internal";
  result.status = MinimizeResult::Optimal;
  result.solution = std::move(sol);
  return result;
}

// ---------------------------------------------------------------------------
// Bound-tightening minimization
// ---------------------------------------------------------------------------

namespace {

std::string emit_core_and_query(const ConstraintSystem& sys,
                                const std::vector<std::string>& extra_asserts) {
  std::string base = emit_smtlib2(sys);
  const size_t query = base.rfind("(check-sat)");
  std::string out = base.substr(0, query);
  for (const std::string& a : extra_asserts) out += a + "\n";
  out += base.substr(query);
  return out;
}

class IncrementalSession {
 public:
  IncrementalSession(const SolverBackend& backend, double deadline)
      : deadline_(deadline) {
    std::vector<std::string> argv{backend.executable};
    argv.insert(argv.end(), backend.extra_args.begin(), backend.extra_args.end());
    child_ = std::make_unique<ChildProcess>(argv);
  }

  // Commands queue here and flush inside the next read-driving pump, which
  // services both pipe directions.
  void send(const std::string& text) { pending_ += text; }

  std::optional<std::string> read_verdict() {
    const size_t from = consumed_;
    auto complete = [&](const std::string& out) {
      return find_verdict(out, from).has_value();
    };
    if (!flush()) return std::nullopt;
    const auto status = child_->read_until(complete, deadline_);
    if (status == ChildProcess::PumpStatus::Timeout) return std::nullopt;
    if (status == ChildProcess::PumpStatus::Broken ||
        status == ChildProcess::PumpStatus::Eof) {
      if (!complete(child_->output())) {
        throw Error(ErrorCode::SolverCrashed,
                    "solver stream ended before a verdict");
      }
    }
    auto verdict = find_verdict(child_->output(), from);
    consumed_ = child_->output().size();
    return verdict;
  }

  std::optional<Model> read_model() {
    const size_t from = consumed_;
    auto complete = [&](const std::string& out) {
      return balanced_end(out, from) != std::string::npos;
    };
    if (!flush()) return std::nullopt;
    const auto status = child_->read_until(complete, deadline_);
    if (status == ChildProcess::PumpStatus::Timeout) return std::nullopt;
    const size_t end = balanced_end(child_->output(), from);
    if (end == std::string::npos) {
      throw Error(ErrorCode::ModelParseError, "incomplete model response");
    }
    Model model = parse_get_value_response(
        child_->output().substr(from, end - from));
    consumed_ = end;
    return model;
  }

 private:
  bool flush() {
    std::string out;
    out.swap(pending_);
    return child_->send_all(out, deadline_) == ChildProcess::PumpStatus::Complete;
  }

  std::unique_ptr<ChildProcess> child_;
  std::string pending_;
  size_t consumed_ = 0;
  double deadline_;
};

std::string model_query(const ConstraintSystem& sys) {
  const std::string base = emit_smtlib2(sys);
  const size_t query = base.rfind("(get-value");
  return base.substr(query);
}

std::string core_only(const ConstraintSystem& sys) {
  const std::string base = emit_smtlib2(sys);
  const size_t query = base.rfind("(check-sat)");
  return base.substr(0, query);
}

}  // namespace

MinimizeResult minimize(const PartitionProblem& problem,
                        const SolverBackend& backend) {
  if (backend.kind == SolverBackend::InternalExact) {
    return solve_exact(problem);
  }

  const ConstraintSystem sys = encode(problem);
  const std::string objective = sys.minimize_qubits ? "qmax" : "cost";
  const double started = monotonic_now();
  const double deadline = started + backend.time_limit_seconds;

  MinimizeResult result;
  std::optional<PartitionSolution> incumbent;
  std::optional<int64_t> bound;
  uint32_t rounds = 0;

  auto finish = [&](MinimizeResult::Status status) {
    result.status = status;
    if (incumbent) {
      incumbent->optimal = status == MinimizeResult::Optimal;
      incumbent->backend = backend.incremental ? "external-incremental"
                                               : "external";
      incumbent->solve_seconds = monotonic_now() - started;
      incumbent->solver_rounds = rounds;
      result.solution = incumbent;
    }
    return result;
  };

  if (backend.incremental) {
    IncrementalSession session(backend, deadline);
    session.send(core_only(sys));
    const std::string query = model_query(sys);
    while (true) {
      ++rounds;
      if (bound) {
        session.send("(assert (< " + objective + " " + std::to_string(*bound) +
                     "))\n");
      }
      session.send("(check-sat)\n");
      const auto verdict = session.read_verdict();
      if (!verdict) {
        return finish(incumbent ? MinimizeResult::TimeoutWithIncumbent
                                : MinimizeResult::TimeoutNoIncumbent);
      }
      if (*verdict == "unsat") {
        return finish(incumbent ? MinimizeResult::Optimal
                                : MinimizeResult::Unsat);
      }
      if (*verdict != "sat") {
        throw Error(ErrorCode::SolverCrashed, "solver said: " + *verdict);
      }
      session.send(query);
      const auto model = session.read_model();
      if (!model) {
        return finish(incumbent ? MinimizeResult::TimeoutWithIncumbent
                                : MinimizeResult::TimeoutNoIncumbent);
      }
      incumbent = decode(sys, *model);
      bound = incumbent->objective_value;
    }
  }

  // One fresh process per bound-tightening round.
  while (true) {
    ++rounds;
    std::vector<std::string> extra;
    if (bound) {
      extra.push_back("(assert (< " + objective + " " + std::to_string(*bound) +
                      "))");
    }
    SolverBackend round_backend = backend;
    round_backend.time_limit_seconds = deadline - monotonic_now();
    if (round_backend.time_limit_seconds <= 0) {
      return finish(incumbent ? MinimizeResult::TimeoutWithIncumbent
                              : MinimizeResult::TimeoutNoIncumbent);
    }
    const SolveResult solve =
        solve_external(emit_core_and_query(sys, extra), round_backend);
    if (solve.status == SolveStatus::Timeout) {
      return finish(incumbent ? MinimizeResult::TimeoutWithIncumbent
                              : MinimizeResult::TimeoutNoIncumbent);
    }
    if (solve.status == SolveStatus::Unsat) {
      return finish(incumbent ? MinimizeResult::Optimal : MinimizeResult::Unsat);
    }
    if (solve.status != SolveStatus::Sat) {
      throw Error(ErrorCode::SolverCrashed, "solver said: " + solve.detail);
    }
    incumbent = decode(sys, solve.model);
    bound = incumbent->objective_value;
  }
}

}  // namespace qknit
