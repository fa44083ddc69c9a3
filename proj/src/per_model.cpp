#include "aoimac/per_model.hpp"

#include <stdexcept>

#include "aoimac/ldpc.hpp"

namespace aoimac {

double packet_error_rate(const PerModel& model, int source_bits, int block_len, ChannelSnr ch) {
    switch (model.kind) {
        case PerModel::Kind::Fixed:
            if (model.fixed_per < 0.0 || model.fixed_per > 1.0)
                throw std::invalid_argument("PerModel: fixed per must be in [0, 1]");
            return model.fixed_per;
        case PerModel::Kind::Rcb:
            return per_estimate(source_bits, block_len, ch).per;
        case PerModel::Kind::Ldpc:
            return estimate_per(source_bits, block_len, ch, model.min_errors, model.max_trials,
                                model.seed, model.max_iter)
                .per_hat;
    }
    throw std::invalid_argument("PerModel: unknown kind");
}

}  // namespace aoimac
