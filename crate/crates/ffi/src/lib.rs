//! C ABI over the `aogame` engine.
//!
//! Graphs and games are opaque heap handles released with their `_free`
//! function. Every fallible call returns an [`AogStatus`]; on failure the
//! message is available from [`aog_last_error`] on the same thread.
//! Strings handed out by the library are owned by the caller and released
//! with [`aog_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::Arc;

use aogame::algy::{make_algy, AlgyDescriptor};
use aogame::bounds::{approx_estimate, bound_report};
use aogame::game::play_match;
use aogame::graph::{generate, parse_graph, serialize_graph, GeneratorSpec};
use aogame::solver::{game_value, SolveError};
use aogame::strategist::{make_strategist, StrategistDescriptor, StrategyError};
use aogame::{Direction, Edge, EdgeStatus, GameError, GameState, Graph};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AogStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed graph text, generator spec or strategy descriptor.
    Parse = 3,
    /// Well-formed input that does not fit, e.g. a non-edge.
    InvalidArgument = 4,
    /// The exact solver refused the graph as too large.
    Guard = 5,
    /// The answer would close a directed cycle.
    IllegalMove = 6,
    /// A match aborted because a strategy misbehaved.
    MatchFault = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AogEdgeKind {
    Open = 0,
    Forced = 1,
    Queried = 2,
}

/// Status of one edge. `from` and `to` are meaningful unless `kind` is open.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct AogEdgeStatus {
    pub kind: AogEdgeKind,
    pub from: usize,
    pub to: usize,
}

pub struct AogGraph {
    inner: Arc<Graph>,
}

pub struct AogGame {
    state: GameState,
}

struct Failure(AogStatus, String);

impl Failure {
    fn new(status: AogStatus, msg: impl ToString) -> Self {
        Self(status, msg.to_string())
    }
}

impl From<GameError> for Failure {
    fn from(e: GameError) -> Self {
        let status = match e {
            GameError::CreatesCycle { .. } => AogStatus::IllegalMove,
            GameError::Guard { .. } => AogStatus::Guard,
            _ => AogStatus::InvalidArgument,
        };
        Self::new(status, e)
    }
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        let status = match e {
            SolveError::Guard { .. } => AogStatus::Guard,
            _ => AogStatus::InvalidArgument,
        };
        Self::new(status, e)
    }
}

impl From<StrategyError> for Failure {
    fn from(e: StrategyError) -> Self {
        match e {
            StrategyError::Solve(inner) => inner.into(),
            other => Self::new(AogStatus::InvalidArgument, other),
        }
    }
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

/// Runs `f`, recording failures and converting panics.
fn guarded(f: impl FnOnce() -> Result<(), Failure>) -> AogStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AogStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_last_error(&msg);
            AogStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::new(AogStatus::NullPointer, "null string"));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure::new(AogStatus::InvalidUtf8, e))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref()
        .ok_or_else(|| Failure::new(AogStatus::NullPointer, format!("null {what}")))
}

unsafe fn deref_mut<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure::new(AogStatus::NullPointer, format!("null {what}")))
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::new(AogStatus::NullPointer, "null output pointer"));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|e| Failure::new(AogStatus::Panic, e))?;
    write_out(out, c.into_raw())
}

fn edge_of(g: &Graph, u: usize, v: usize) -> Result<Edge, Failure> {
    Edge::new(u, v)
        .filter(|e| g.edge_index(*e).is_some())
        .ok_or_else(|| Failure::new(AogStatus::InvalidArgument, format!("({u}, {v}) is not an edge")))
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn aog_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn aog_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Static version string.
#[no_mangle]
pub extern "C" fn aog_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Parses edge-list text (`n m` header then `u v` lines).
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aog_graph_parse(text: *const c_char, out: *mut *mut AogGraph) -> AogStatus {
    guarded(|| {
        let g = parse_graph(read_str(text)?).map_err(|e| Failure::new(AogStatus::Parse, e))?;
        write_out(out, Box::into_raw(Box::new(AogGraph { inner: Arc::new(g) })))
    })
}

/// Builds a graph from a JSON generator spec such as
/// `{"kind": "complete-multipartite", "parts": [2, 2, 2]}`.
///
/// # Safety
/// `spec_json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aog_graph_generate(spec_json: *const c_char, out: *mut *mut AogGraph) -> AogStatus {
    guarded(|| {
        let spec: GeneratorSpec =
            serde_json::from_str(read_str(spec_json)?).map_err(|e| Failure::new(AogStatus::Parse, e))?;
        let g = generate(&spec).map_err(|e| Failure::new(AogStatus::InvalidArgument, e))?;
        write_out(out, Box::into_raw(Box::new(AogGraph { inner: Arc::new(g) })))
    })
}

/// # Safety
/// `g` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn aog_graph_free(g: *mut AogGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count; 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aog_graph_vertex_count(g: *const AogGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.n())
}

/// Edge count; 0 for null.
///
/// # Safety
/// `g` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aog_graph_edge_count(g: *const AogGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.m())
}

/// Canonical edge-list text of the graph.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aog_graph_to_text(g: *const AogGraph, out: *mut *mut c_char) -> AogStatus {
    guarded(|| {
        let g = deref(g, "graph")?;
        write_string(out, serialize_graph(&g.inner))
    })
}

/// Exact game value under the default search guard, as JSON
/// `{"value", "best", "nodes", "memo_hits"}`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aog_solve(g: *const AogGraph, out: *mut *mut c_char) -> AogStatus {
    guarded(|| {
        let g = deref(g, "graph")?;
        let r = game_value(&g.inner)?;
        write_string(
            out,
            serde_json::to_string(&r).map_err(|e| Failure::new(AogStatus::Panic, e))?,
        )
    })
}

/// Closed-form bounds with constant `c`, as JSON `{"bounds", "approx"}`.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aog_bounds(g: *const AogGraph, c: f64, out: *mut *mut c_char) -> AogStatus {
    guarded(|| {
        let g = deref(g, "graph")?;
        let bad = |e| Failure::new(AogStatus::InvalidArgument, e);
        let bounds = bound_report(&g.inner, c).map_err(bad)?;
        let approx = approx_estimate(&g.inner, c).map_err(bad)?;
        let v = serde_json::json!({ "bounds": bounds, "approx": approx });
        write_string(out, v.to_string())
    })
}

/// Plays one match between two built-in strategies, named as on the command
/// line (e.g. `exhaustive`, `greedy`). Writes the transcript JSON.
///
/// # Safety
/// `g` must be a live handle; the descriptors NUL-terminated; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn aog_simulate(
    g: *const AogGraph,
    algy: *const c_char,
    strategist: *const c_char,
    out: *mut *mut c_char,
) -> AogStatus {
    guarded(|| {
        let g = deref(g, "graph")?;
        let parse = |e: String| Failure::new(AogStatus::Parse, e);
        let a: AlgyDescriptor = read_str(algy)?
            .parse()
            .map_err(|e: StrategyError| parse(e.to_string()))?;
        let s: StrategistDescriptor = read_str(strategist)?
            .parse()
            .map_err(|e: StrategyError| parse(e.to_string()))?;
        if matches!(s, StrategistDescriptor::CutPosetFile(_)) {
            return Err(Failure::new(
                AogStatus::InvalidArgument,
                "file descriptors are not accepted",
            ));
        }
        let mut algy = make_algy(&a, &g.inner, None)?;
        let mut strat = make_strategist(&s, &g.inner)?;
        let t =
            play_match(&g.inner, algy.as_mut(), strat.as_mut()).map_err(|e| Failure::new(AogStatus::MatchFault, e))?;
        write_string(out, t.to_json())
    })
}

/// Starts a game on `g` with nothing revealed. The game keeps its own
/// reference to the graph, so `g` may be freed afterwards.
///
/// # Safety
/// `g` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aog_game_new(g: *const AogGraph, out: *mut *mut AogGame) -> AogStatus {
    guarded(|| {
        let g = deref(g, "graph")?;
        let game = AogGame {
            state: GameState::new(g.inner.clone()),
        };
        write_out(out, Box::into_raw(Box::new(game)))
    })
}

/// # Safety
/// `game` must be null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn aog_game_free(game: *mut AogGame) {
    if !game.is_null() {
        drop(Box::from_raw(game));
    }
}

/// Reveals edge `{u, v}` as `from -> to`. Fails with `IllegalMove` if the
/// opposite direction is forced, leaving the game unchanged.
///
/// # Safety
/// `game` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn aog_game_answer(game: *mut AogGame, from: usize, to: usize) -> AogStatus {
    guarded(|| {
        let game = deref_mut(game, "game")?;
        let e = edge_of(game.state.graph(), from, to)?;
        game.state = game.state.apply_answer(e, Direction::new(from, to))?;
        Ok(())
    })
}

/// # Safety
/// `game` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aog_game_edge_status(
    game: *const AogGame,
    u: usize,
    v: usize,
    out: *mut AogEdgeStatus,
) -> AogStatus {
    guarded(|| {
        let game = deref(game, "game")?;
        let e = edge_of(game.state.graph(), u, v)?;
        let status = match game.state.edge_status(e)? {
            EdgeStatus::Open => AogEdgeStatus {
                kind: AogEdgeKind::Open,
                from: 0,
                to: 0,
            },
            EdgeStatus::Forced(d) => AogEdgeStatus {
                kind: AogEdgeKind::Forced,
                from: d.from,
                to: d.to,
            },
            EdgeStatus::Queried(d) => AogEdgeStatus {
                kind: AogEdgeKind::Queried,
                from: d.from,
                to: d.to,
            },
        };
        write_out(out, status)
    })
}

/// 1 when every edge is determined, 0 otherwise or for null.
///
/// # Safety
/// `game` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aog_game_is_terminal(game: *const AogGame) -> i32 {
    game.as_ref().is_some_and(|g| g.state.is_terminal()) as i32
}

/// Number of answered queries; 0 for null.
///
/// # Safety
/// `game` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn aog_game_queries(game: *const AogGame) -> usize {
    game.as_ref().map_or(0, |g| g.state.queries())
}

/// Number of acyclic orientations consistent with the answers so far.
///
/// # Safety
/// `game` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn aog_game_extension_count(game: *const AogGame, out: *mut u64) -> AogStatus {
    guarded(|| {
        let game = deref(game, "game")?;
        write_out(out, game.state.extension_count()?)
    })
}
