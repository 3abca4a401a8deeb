#pragma once

#include <chrono>
#include <cstdio>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "quiztree/io/json.hpp"
#include "quiztree/strategies.hpp"

namespace quiztree {

/// One game: Alice's distribution, Bob's strategy state and the questions asked so far.
class GameSession {
 public:
  using Clock = std::chrono::steady_clock;

  GameSession(std::string id, Distribution dist, StrategySpec spec)
      : id_(std::move(id)), dist_(std::move(dist)), spec_(std::move(spec)), stepper_(make_stepper(spec_, dist_)) {
    summary_ = io::distribution_json(dist_);
  }

  const std::string& id() const { return id_; }

  /// Applies one answer under the session lock; returns the response body.
  io::json answer(bool yes) {
    std::lock_guard lock(mu_);
    auto q = stepper_->question();
    require(q.has_value(), ErrorCode::WrongState, "session " + id_ + " is already done");
    stepper_->answer(yes);  // InconsistentAnswers leaves the state unchanged
    history_.push_back({std::move(*q), yes});
    return progress_locked();
  }

  io::json state() const {
    std::lock_guard lock(mu_);
    io::json j = progress_locked();
    j["id"] = id_;
    j["distribution"] = summary_;
    j["strategy"] = strategy_json(spec_);
    io::json hist = io::json::array();
    for (const auto& step : history_) hist.push_back({{"question", io::question_json(step.question)}, {"answer", step.answer}});
    j["history"] = std::move(hist);
    return j;
  }

  /// {status, asked, question | result}
  io::json progress() const {
    std::lock_guard lock(mu_);
    return progress_locked();
  }

  std::vector<TranscriptStep> history() const {
    std::lock_guard lock(mu_);
    return history_;
  }

  void touch(Clock::time_point now) {
    std::lock_guard lock(mu_);
    last_access_ = now;
  }
  Clock::time_point last_access() const {
    std::lock_guard lock(mu_);
    return last_access_;
  }

 private:
  io::json progress_locked() const {
    io::json j{{"asked", stepper_->asked()}};
    if (auto x = stepper_->result()) {
      j["status"] = "done";
      j["result"] = {{"element", x->label()}, {"render", to_string(*x)}};
    } else {
      j["status"] = "awaiting-answer";
      j["question"] = io::question_json(*stepper_->question());
    }
    return j;
  }

  std::string id_;
  Distribution dist_;
  StrategySpec spec_;
  std::unique_ptr<Stepper> stepper_;
  io::json summary_;
  std::vector<TranscriptStep> history_;
  mutable std::mutex mu_;
  Clock::time_point last_access_ = Clock::now();
};

/// In-memory sessions with idle expiry. Restarting the process drops every session.
class SessionStore {
 public:
  using Clock = GameSession::Clock;
  using Now = std::function<Clock::time_point()>;

  explicit SessionStore(std::chrono::seconds ttl = std::chrono::hours(1), Now now = [] { return Clock::now(); })
      : ttl_(ttl), now_(std::move(now)), rng_(std::random_device{}()) {}

  std::shared_ptr<GameSession> create(Distribution dist, StrategySpec spec) {
    std::string id;
    {
      std::lock_guard lock(mu_);
      id = fresh_id_locked();
    }
    auto s = std::make_shared<GameSession>(id, std::move(dist), std::move(spec));
    s->touch(now_());
    std::lock_guard lock(mu_);
    evict_locked();
    sessions_.emplace(id, s);
    return s;
  }

  std::shared_ptr<GameSession> get(const std::string& id) {
    std::lock_guard lock(mu_);
    evict_locked();
    auto it = sessions_.find(id);
    require(it != sessions_.end(), ErrorCode::UnknownSession, "no session " + id);
    it->second->touch(now_());
    return it->second;
  }

  std::size_t size() {
    std::lock_guard lock(mu_);
    evict_locked();
    return sessions_.size();
  }

 private:
  std::string fresh_id_locked() {
    char buf[33];
    do {
      std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng_()),
                    static_cast<unsigned long long>(rng_()));
    } while (sessions_.count(buf));
    return buf;
  }

  void evict_locked() {
    const auto now = now_();
    for (auto it = sessions_.begin(); it != sessions_.end();) {
      if (now - it->second->last_access() > ttl_) {
        it = sessions_.erase(it);
      } else {
        ++it;
      }
    }
  }

  std::chrono::seconds ttl_;
  Now now_;
  std::mt19937_64 rng_;
  std::mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<GameSession>> sessions_;
};

}  // namespace quiztree
