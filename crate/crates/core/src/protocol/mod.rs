//! Three-phase exchange protocol: TTP share generation, alternating share
//! release gated on direction entropy, and XOR reconstruction.

mod engine;
mod player;
mod sharing;
mod transcript;

pub use engine::run_protocol;
pub use player::{
    cooperation_increment, decide_continue, defection_information, Action, EntropyUpdate,
    PlayerConfig, PlayerId, PlayerState, Policy,
};
pub use sharing::{
    reconstruct, reconstruct_complete, split_secret, split_secret_with, Secret, ShareSet,
};
pub use transcript::{
    transcript_direction_entropy, transcript_direction_entropy_for,
    transcript_signed_direction_entropy, MoveRecord, ProtocolTranscript, Reconstructed,
    RoundRecord, SharesHeld, Termination,
};
