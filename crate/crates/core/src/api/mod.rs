//! Session-based JSON service for interactive play.
//!
//! A human plays one side against an engine strategy. Endpoints:
//!
//! | method | path                    | body              |
//! |--------|-------------------------|-------------------|
//! | POST   | `/sessions`             | `CreateRequest`   |
//! | GET    | `/sessions/{id}`        |                   |
//! | POST   | `/sessions/{id}/query`  | `{"edge":[u,v]}`  |
//! | POST   | `/sessions/{id}/answer` | `{"dir":[x,y]}`   |
//! | GET    | `/sessions/{id}/hint`   |                   |

mod server;
mod session;

pub use server::{router, serve, ServerConfig, SessionStore};
pub use session::{
    AnswerResponse, ApiError, CreateRequest, EdgeView, GraphInput, Hint, HumanRole, QueryResponse, Session,
    SessionRecord, View,
};
