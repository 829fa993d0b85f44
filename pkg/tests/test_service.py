"""Live-play service: protocol flow, server-side legality, censorship."""

import json

import pytest
from fastapi.testclient import TestClient

from hanabi import Card, GameConfig
from hanabi.replay import read as read_replay, verify as verify_replay
from hanabi.service import create_app


@pytest.fixture()
def client(tmp_path):
    app = create_app(replay_dir=tmp_path / "replays")
    with TestClient(app) as c:
        c.replay_dir = tmp_path / "replays"
        yield c


def _create(client, players=3, seats=None, seed=42):
    body = {"players": players, "seed": seed}
    if seats is not None:
        body["seats"] = seats
    r = client.post("/sessions", json=body)
    assert r.status_code == 200, r.text
    return r.json()


def test_healthz_counts_sessions(client):
    assert client.get("/healthz").json() == {
        "status": "ok", "sessions": 0, "active_games": 0}
    _create(client, seats=["human", "hat", "hat"])
    body = client.get("/healthz").json()
    assert body["sessions"] == 1 and body["active_games"] == 1


def test_create_session_validation(client):
    r = client.post("/sessions", json={"players": 3, "seats": ["human"]})
    assert r.status_code == 400
    r = client.post("/sessions", json={"players": 3,
                                       "seats": ["human", "bogus", "hat"]})
    assert r.status_code == 400


def test_bot_only_session_plays_itself_out(client):
    info = _create(client, players=4, seats=["hat"] * 4, seed=1)
    body = client.get("/healthz").json()
    assert body["active_games"] == 0
    path = client.replay_dir / f"{info['session']}.hnb.jsonl"
    replay = read_replay(path)
    assert verify_replay(replay) is None
    assert replay.final_score is not None


def test_hello_snapshot_and_turn_flow(client):
    info = _create(client, seats=["human", "hat", "hat"])
    sid = info["session"]
    with client.websocket_connect(f"/ws/{sid}/0") as ws:
        hello = ws.receive_json()
        assert hello["type"] == "hello"
        assert hello["seat"] == 0
        assert hello["session"] == sid
        snap = ws.receive_json()
        assert snap["type"] == "snapshot"
        state = snap["state"]
        assert set(state["hands"]) == {"1", "2"}
        assert state["own_hand_size"] == 5
        turn = ws.receive_json()
        assert turn["type"] == "your_turn"
        assert len(turn["legal"]) > 0
        # sequence numbers strictly increase
        assert hello["seq"] < snap["seq"] < turn["seq"]


def test_rejections_name_the_rule(client):
    info = _create(client, seats=["human", "human", "hat"], seed=9)
    sid = info["session"]
    with client.websocket_connect(f"/ws/{sid}/1") as ws1:
        for _ in range(2):
            ws1.receive_json()
        # seat 1 moving on seat 0's turn
        ws1.send_json({"type": "move", "move": {"kind": "play", "slot": 0}})
        err = ws1.receive_json()
        assert err["type"] == "error"
        assert err["reason"] == "not-your-turn"
    with client.websocket_connect(f"/ws/{sid}/0") as ws0:
        for _ in range(3):
            ws0.receive_json()
        # discarding at maximum tokens is illegal
        ws0.send_json({"type": "move", "move": {"kind": "discard", "slot": 0}})
        err = ws0.receive_json()
        assert err["reason"] == "illegal-move"
        assert "maximum information tokens" in err["detail"]
        # malformed move
        ws0.send_json({"type": "move", "move": {"kind": "launch"}})
        err = ws0.receive_json()
        assert err["reason"] == "malformed-move"
        # wrong message type
        ws0.send_json({"type": "chat", "text": "hi"})
        err = ws0.receive_json()
        assert err["reason"] == "malformed-message"


def test_unknown_session_and_seat(client):
    with client.websocket_connect("/ws/nope/0") as ws:
        err = ws.receive_json()
        assert err["reason"] == "unknown-session"
    info = _create(client, seats=["human", "hat", "hat"])
    with client.websocket_connect(f"/ws/{info['session']}/1") as ws:
        err = ws.receive_json()
        assert err["reason"] == "unknown-seat"


def test_reconnect_gets_fresh_snapshot(client):
    info = _create(client, seats=["human", "hat", "hat"], seed=5)
    sid = info["session"]
    with client.websocket_connect(f"/ws/{sid}/0") as ws:
        ws.receive_json()
        ws.receive_json()
        turn = ws.receive_json()
        ws.send_json({"type": "move", "move": turn["legal"][0]})
        ws.receive_json()  # own outcome
    # drop and rejoin: full censored snapshot resent
    with client.websocket_connect(f"/ws/{sid}/0") as ws:
        hello = ws.receive_json()
        assert hello["type"] == "hello"
        snap = ws.receive_json()
        assert snap["type"] == "snapshot"
        assert snap["state"]["turn"] >= 1


def _play_full_game_as_human(client, seed):
    """Scripted human completes a 3-player game with two hat bots.

    Returns (transcript of raw message texts sent to the human's seat,
    hidden-hand history, session id).
    """
    info = _create(client, seats=["human", "hat", "hat"], seed=seed)
    sid = info["session"]
    service = client.app.state.service
    session = service.get(sid)
    transcript = []
    hidden_history = []
    game_over = False
    with client.websocket_connect(f"/ws/{sid}/0") as ws:
        while not game_over:
            msg = ws.receive_text()
            hidden_history.append(list(session.state.hands[0]))
            transcript.append(msg)
            data = json.loads(msg)
            if data["type"] == "game_over":
                game_over = True
            elif data["type"] == "your_turn":
                legal = data["legal"]
                # prefer a hint, else discard, else play: keeps the game long
                def keyfn(m):
                    order = {"reveal_color": 0, "reveal_rank": 0,
                             "discard": 1, "play": 2}
                    return order[m["kind"]]
                move = sorted(legal, key=keyfn)[0]
                ws.send_json({"type": "move", "move": move})
    return transcript, hidden_history, sid


def test_full_game_and_transcript_censorship(client):
    transcript, hidden_history, sid = _play_full_game_as_human(client, seed=77)
    final = json.loads(transcript[-1])
    assert final["type"] == "game_over"
    assert isinstance(final["score"], int)

    # Structural scan: no message ever carries a hands entry for seat 0.
    for raw in transcript:
        data = json.loads(raw)
        state = data.get("state")
        if state is not None:
            assert "0" not in state["hands"]

    # Byte-level scan: a card identity that is unique to the human's hidden
    # hand at message time must not appear anywhere in the message bytes.
    for raw, hand in zip(transcript, hidden_history):
        data = json.loads(raw)
        state = data.get("state")
        public = set()
        if state is not None:
            for cards in state["hands"].values():
                public.update(cards)
            public.update(state["discards"])
        if data.get("type") == "outcome" and data["outcome"]["revealed"]:
            public.add(data["outcome"]["revealed"])
        for card in hand:
            text = card.text()
            if text not in public:
                assert f'"{text}"' not in raw, (
                    f"hidden card {text} leaked in {data['type']} message")

    # sequence numbers monotonically increase across the session
    seqs = [json.loads(raw)["seq"] for raw in transcript]
    assert seqs == sorted(seqs) and len(set(seqs)) == len(seqs)

    # the finished game is stored and re-verifies
    replay = read_replay(client.replay_dir / f"{sid}.hnb.jsonl")
    assert verify_replay(replay) is None
    assert replay.final_score == final["score"]


def test_knowledge_in_snapshot_reflects_hints(client):
    info = _create(client, seats=["human", "hat", "hat"], seed=13)
    sid = info["session"]
    with client.websocket_connect(f"/ws/{sid}/0") as ws:
        ws.receive_json()
        snap = ws.receive_json()
        know = snap["state"]["knowledge"]["0"]
        assert len(know) == 5
        for k in know:
            assert k["colors"] == "RYGWB"
            assert k["ranks"] == [1, 2, 3, 4, 5]
            assert k["hinted_color"] is None and k["hinted_rank"] is None
