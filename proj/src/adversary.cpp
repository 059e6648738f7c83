// Copyright 2026 The byzest Authors.
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


#include "byzest/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace byzest {
namespace {

bool is_good(const AdversaryView& view, NodeId v) {
    return std::binary_search(view.good_ids.begin(), view.good_ids.end(), v);
}

// Good receivers of a faulty sender, ascending.
template <class Fn>
void for_each_faulty_edge(const AdversaryView& view, Fn&& fn) {
    for (NodeId f : view.fault_ids)
        for (NodeId r : view.topology.out_neighbors(f))
            if (is_good(view, r)) fn(f, r);
}

std::size_t view_dim(const AdversaryView& view) { return view.theta_star.size(); }

}  // namespace

void AdversaryOutput::reset(std::size_t n) {
    inbox.resize(n);
    for (auto& box : inbox) box.clear();
}

GaussianNoiseAttack::GaussianNoiseAttack(double sigma) : sigma_(sigma) {
    if (!(sigma > 0.0) || !std::isfinite(sigma))
        throw std::invalid_argument("gaussian attack needs sigma > 0");
}

void GaussianNoiseAttack::craft(const AdversaryView& view, Rng& rng, AdversaryOutput& out) {
    const std::size_t d = view_dim(view);
    for_each_faulty_edge(view, [&](NodeId f, NodeId r) {
        Vec m(d);
        for (std::size_t k = 0; k < d; ++k) m[k] = rng.normal(0.0, sigma_);
        out.inbox[r].push_back({f, std::move(m)});
    });
}

ExtremeCoordinateAttack::ExtremeCoordinateAttack(std::vector<int> direction, double margin)
    : direction_(std::move(direction)), margin_(margin) {
    if (!(margin > 0.0) || !std::isfinite(margin))
        throw std::invalid_argument("extreme attack needs a positive margin");
}

void ExtremeCoordinateAttack::craft(const AdversaryView& view, Rng&, AdversaryOutput& out) {
    if (view.fault_ids.empty() || view.good_z.empty()) return;
    const std::size_t d = view_dim(view);
    if (!direction_.empty() && direction_.size() != d)
        throw std::invalid_argument("attack direction has the wrong dimension");
    Vec m(d);
    for (std::size_t k = 0; k < d; ++k) {
        double lo = std::numeric_limits<double>::infinity(), hi = -lo;
        for (const auto& z : view.good_z) {
            lo = std::min(lo, z[k]);
            hi = std::max(hi, z[k]);
        }
        const bool up = direction_.empty() || direction_[k] > 0;
        m[k] = up ? hi + margin_ : lo - margin_;
    }
    for_each_faulty_edge(view, [&](NodeId f, NodeId r) { out.inbox[r].push_back({f, m}); });
}

PullTowardAttack::PullTowardAttack(Vec target) : target_(std::move(target)) {
    if (!target_.all_finite()) throw std::invalid_argument("pull target must be finite");
}

void PullTowardAttack::craft(const AdversaryView& view, Rng&, AdversaryOutput& out) {
    const std::size_t d = view_dim(view);
    if (target_.size() != d) throw std::invalid_argument("pull target has the wrong dimension");
    // Index of each good id in good_z.
    auto slot = [&](NodeId v) {
        return static_cast<std::size_t>(
            std::lower_bound(view.good_ids.begin(), view.good_ids.end(), v) -
            view.good_ids.begin());
    };
    NodeId last = std::numeric_limits<NodeId>::max();
    Vec lo(d), hi(d);
    for_each_faulty_edge(view, [&](NodeId f, NodeId r) {
        if (r != last) {
            // Good values r will see: its own z and its good in-neighbours'.
            const Vec& own = view.good_z[slot(r)];
            lo = own;
            hi = own;
            for (NodeId j : view.topology.in_neighbors(r)) {
                if (!is_good(view, j)) continue;
                const Vec& z = view.good_z[slot(j)];
                for (std::size_t k = 0; k < d; ++k) {
                    lo[k] = std::min(lo[k], z[k]);
                    hi[k] = std::max(hi[k], z[k]);
                }
            }
            last = r;
        }
        Vec m(d);
        for (std::size_t k = 0; k < d; ++k) m[k] = std::clamp(target_[k], lo[k], hi[k]);
        out.inbox[r].push_back({f, std::move(m)});
    });
}

std::unique_ptr<AdversaryStrategy> make_strategy(const AdversarySpec& spec, std::size_t d) {
    if (spec.name == "none") return nullptr;
    if (spec.name == "gaussian_noise") return std::make_unique<GaussianNoiseAttack>(spec.sigma);
    if (spec.name == "extreme_coordinate") {
        if (spec.direction != 1 && spec.direction != -1 && spec.direction != 0)
            throw std::invalid_argument("attack direction must be 1, -1 or 0");
        std::vector<int> dir(d, spec.direction);
        if (spec.direction == 0)
            for (std::size_t k = 0; k < d; ++k) dir[k] = k % 2 == 0 ? 1 : -1;
        return std::make_unique<ExtremeCoordinateAttack>(std::move(dir), spec.margin);
    }
    if (spec.name == "pull_toward") return std::make_unique<PullTowardAttack>(Vec(d, spec.target));
    throw std::invalid_argument("unknown adversary '" + spec.name + "'");
}

}  // namespace byzest
