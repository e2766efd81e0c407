use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::{validation, Result};

use super::player::{decide_continue, Action, PlayerConfig, PlayerId, PlayerState};
use super::sharing::{reconstruct_complete, split_secret_with, Secret, ShareSet};
use super::transcript::{
    MoveRecord, ProtocolTranscript, Reconstructed, RoundRecord, SharesHeld, Termination,
};

const SHARE_STREAM: u64 = 0;
const P1_POLICY_STREAM: u64 = 1;
const P2_POLICY_STREAM: u64 = 2;

fn stream(seed: u64, id: u64) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(id);
    rng
}

/// Run the three-phase exchange.
///
/// Phase 1 splits both secrets into `n` XOR shares. In each round `t` P1 moves
/// first, then P2; C transmits share `t`, D transmits nothing and ends the
/// protocol for both. After every move the counterparty checks the change in the
/// actor's signed direction entropy. Phase 3 reconstructs whatever is complete.
pub fn run_protocol(
    secret_p1: &Secret,
    secret_p2: &Secret,
    n: usize,
    p1: PlayerConfig,
    p2: PlayerConfig,
    seed: u64,
) -> Result<ProtocolTranscript> {
    if n == 0 {
        return Err(validation("protocol needs at least one round"));
    }
    // Re-validate: configs may have been built field-by-field.
    let p1 = PlayerConfig::new(p1.policy, p1.coop_prob)?;
    let p2 = PlayerConfig::new(p2.policy, p2.coop_prob)?;

    let mut share_rng = stream(seed, SHARE_STREAM);
    let shares_p1 = split_secret_with(secret_p1, n, &mut share_rng)?;
    let shares_p2 = split_secret_with(secret_p2, n, &mut share_rng)?;

    let mut rngs = [
        stream(seed, P1_POLICY_STREAM),
        stream(seed, P2_POLICY_STREAM),
    ];
    let mut players = [
        PlayerState::new(PlayerId::P1, p1),
        PlayerState::new(PlayerId::P2, p2),
    ];
    for (player, rng) in players.iter_mut().zip(rngs.iter_mut()) {
        player.prepare(n, rng);
    }
    let outgoing: [&ShareSet; 2] = [&shares_p1, &shares_p2];

    let mut rounds = Vec::with_capacity(n);
    let mut termination = Termination::Completed;

    'rounds: for t in 1..=n {
        let mut record = RoundRecord {
            round: t,
            moves: Vec::with_capacity(2),
        };
        for actor in 0..2 {
            let other = 1 - actor;
            let action = players[actor].decide(t, &mut rngs[actor]);
            let h_prev = players[actor].signed_dir_entropy;
            let update = players[actor].update_direction_entropy(action)?;

            let share_sent = match action {
                Action::Cooperate => {
                    let share = outgoing[actor].share(t - 1).to_vec();
                    players[other].received_shares.push(share);
                    Some(t)
                }
                Action::Defect => None,
            };
            let proceed = decide_continue(update.signed_total, h_prev);

            record.moves.push(MoveRecord {
                actor: players[actor].id,
                action,
                share_sent,
                direction: action.direction(),
                delta_h: update.signed_total - h_prev,
                counterparty_continues: proceed,
                cumulative_p1: players[0].cumulative_dir_entropy,
                cumulative_p2: players[1].cumulative_dir_entropy,
                signed_p1: players[0].signed_dir_entropy,
                signed_p2: players[1].signed_dir_entropy,
            });

            if action == Action::Defect {
                termination = Termination::by(players[actor].id);
            } else if !proceed {
                termination = Termination::by(players[other].id);
            }
            if termination != Termination::Completed {
                rounds.push(record);
                break 'rounds;
            }
        }
        rounds.push(record);
    }

    let [state_p1, state_p2] = &players;
    let rebuild = |state: &PlayerState| {
        let held = ShareSet::from_shares(state.received_shares.clone());
        reconstruct_complete(&held, n).ok()
    };

    Ok(ProtocolTranscript {
        n,
        seed,
        p1,
        p2,
        rounds,
        termination,
        shares_held: SharesHeld {
            p1: state_p1.received_shares.len(),
            p2: state_p2.received_shares.len(),
        },
        reconstructed: Reconstructed {
            p1: rebuild(state_p1),
            p2: rebuild(state_p2),
        },
    })
}
