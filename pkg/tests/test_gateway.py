from __future__ import annotations

import json

import pytest

from vgi.gateway import (
    GatewayError,
    MockScript,
    MockTransport,
    Gateway,
    ProviderConfig,
    chat_payload,
    mock_provider,
)
from vgi.prompting import Condition, DecodingParams, ImageAttachment, build_prompt

def c1_bundle(text="Passami la chiave", model="mock-model"):
    return build_prompt(text, Condition.C1_SPEECH_ONLY, model_id=model)


def c3_bundle(text="Passami la chiave", model="mock-model"):
    return build_prompt(
        text,
        Condition.C3_MULTIMODAL,
        image=ImageAttachment("image/jpeg", b"\xff\xd8test"),
        model_id=model,
    )


class TestTranslate:
    def test_mock_table_lookup(self):
        bundle = c1_bundle()
        gw = mock_provider(MockScript(translations={bundle.digest: "Give me the wrench"}))
        result = gw.translate(bundle)
        assert result.text == "Give me the wrench"
        assert result.prompt_digest == bundle.digest
        assert result.latency_ms == 0
        assert result.finish_reason == "stop"

    def test_unscripted_digest_rejected(self):
        gw = mock_provider(MockScript())
        with pytest.raises(GatewayError) as exc:
            gw.translate(c1_bundle())
        assert exc.value.kind == "provider_rejected"
        assert "unscripted digest" in exc.value.detail
        assert not exc.value.retryable

    def test_rate_limit_then_success_records_one_retry(self):
        bundle = c1_bundle()
        script = MockScript(
            translations={bundle.digest: "ok"}, faults={1: "rate_limited"}
        )
        gw = mock_provider(script)
        result = gw.translate(bundle)
        assert result.text == "ok"
        assert gw.transport.call_count == 2

    def test_retries_capped_at_max_retries(self):
        bundle = c1_bundle()
        faults = {i: "timeout" for i in range(1, 10)}
        gw = mock_provider(
            MockScript(translations={bundle.digest: "x"}, faults=faults),
            config=ProviderConfig(base_url="mock://", model_id="mock-model", max_retries=2),
        )
        with pytest.raises(GatewayError):
            gw.translate(bundle)
        assert gw.transport.call_count == 3  # 1 initial + 2 retries

    def test_backoff_delays_non_decreasing(self):
        bundle = c1_bundle()
        delays = []
        faults = {1: "timeout", 2: "timeout", 3: "timeout"}
        cfg = ProviderConfig(base_url="mock://", model_id="mock-model", max_retries=3)
        gw = Gateway(
            cfg,
            transport=MockTransport(MockScript(translations={bundle.digest: "ok"}, faults=faults)),
            sleep=delays.append,
        )
        assert gw.translate(bundle).text == "ok"
        assert len(delays) == 3
        assert delays == sorted(delays)

    def test_c3_wire_payload_has_exactly_one_image_part(self):
        bundle = c3_bundle()
        gw = mock_provider(MockScript(translations={bundle.digest: "ok"}))
        gw.translate(bundle)
        payload = gw.transport.calls[-1]["payload"]
        user = payload["messages"][1]
        parts = [p for p in user["content"] if p.get("type") == "image_url"]
        assert len(parts) == 1
        assert parts[0]["image_url"]["url"].startswith("data:image/jpeg;base64,")

    def test_temperature_pinned_to_zero_on_the_wire(self):
        bundle = c1_bundle()
        gw = mock_provider(MockScript(translations={bundle.digest: "ok"}))
        gw.translate(bundle)
        assert all(
            c["payload"]["temperature"] == 0 for c in gw.transport.calls if c["kind"] == "chat"
        )

    def test_nonzero_temperature_refused_client_side(self):
        bundle = build_prompt(
            "Ciao", Condition.C1_SPEECH_ONLY, model_id="m", decoding=DecodingParams(temperature=0.7)
        )
        gw = mock_provider(MockScript(translations={bundle.digest: "x"}))
        with pytest.raises(ValueError, match="temperature 0"):
            gw.translate(bundle)


class TestCache:
    def test_one_file_per_digest_and_no_second_call(self, tmp_path):
        bundle = c1_bundle()
        script = MockScript(translations={bundle.digest: "cached reply"})
        gw = mock_provider(script, cache_dir=tmp_path / "cache")
        first = gw.translate(bundle)
        assert gw.transport.call_count == 1
        cache_file = tmp_path / "cache" / f"{bundle.digest}.json"
        assert cache_file.is_file()
        envelope = json.loads(cache_file.read_text())
        assert envelope["response"]["choices"][0]["message"]["content"] == "cached reply"

        second = gw.translate(bundle)
        assert gw.transport.call_count == 1  # served from cache
        assert second == first

    def test_cache_survives_provider_swap(self, tmp_path):
        bundle = c1_bundle()
        gw1 = mock_provider(
            MockScript(translations={bundle.digest: "hello"}), cache_dir=tmp_path / "c"
        )
        gw1.translate(bundle)
        gw2 = mock_provider(MockScript(), cache_dir=tmp_path / "c")  # empty script
        assert gw2.translate(bundle).text == "hello"


class TestTranscribe:
    def test_scripted_segments_in_order(self):
        segments = [
            {"text": "Passami la", "start_ms": 0, "end_ms": 600, "is_final": False},
            {"text": "Passami la chiave", "start_ms": 0, "end_ms": 1200, "is_final": True},
        ]
        gw = mock_provider(MockScript(transcripts=[segments]))
        out = list(gw.transcribe([b"chunk1", b"chunk2"]))
        assert [s.text for s in out] == ["Passami la", "Passami la chiave"]
        assert [s.is_final for s in out] == [False, True]

    def test_last_segment_forced_final(self):
        gw = mock_provider(
            MockScript(transcripts=[[{"text": "ciao", "start_ms": 0, "end_ms": 100}]])
        )
        out = list(gw.transcribe([b"x"]))
        assert len(out) == 1 and out[0].is_final

    def test_empty_audio_yields_no_segments(self):
        gw = mock_provider(MockScript(transcripts=[[{"text": "never"}]]))
        assert list(gw.transcribe([])) == []
        assert list(gw.transcribe([b""])) == []
        assert gw.transport.call_count == 0

    def test_network_drop_after_retries_closes_stream(self):
        faults = {i: "network" for i in range(1, 6)}
        gw = mock_provider(MockScript(transcripts=[[{"text": "x"}]], faults=faults))
        with pytest.raises(GatewayError) as exc:
            list(gw.transcribe([b"audio"]))
        assert exc.value.kind == "network"


class TestSynthesize:
    def test_mock_tone_tagged_with_text_length(self):
        gw = mock_provider()
        audio, media = gw.synthesize("Give me the wrench.")
        assert audio == b"TONE:19"
        assert media == "audio/wav"

    def test_empty_text_rejected(self):
        gw = mock_provider()
        with pytest.raises(ValueError, match="non-empty"):
            gw.synthesize("  ")

    def test_provider_rejection_not_retried(self):
        gw = mock_provider(MockScript(faults={1: "provider_rejected"}))
        with pytest.raises(GatewayError) as exc:
            gw.synthesize("ciao")
        assert exc.value.kind == "provider_rejected"
        assert gw.transport.call_count == 1


class TestSecrets:
    def test_api_key_never_in_public_config_or_repr(self):
        cfg = ProviderConfig(base_url="https://x", api_key="sk-SECRET-123")
        assert "sk-SECRET-123" not in json.dumps(cfg.to_public_dict())
        assert "sk-SECRET-123" not in repr(cfg)

    def test_error_taxonomy_invariants(self):
        assert GatewayError("timeout").retryable
        assert GatewayError("rate_limited").retryable
        assert not GatewayError("provider_rejected").retryable
        assert GatewayError("network").retryable
        assert not GatewayError("malformed_response").retryable


class TestChatPayload:
    def test_text_bundle_payload_shape(self):
        bundle = c1_bundle(model="gpt-x")
        payload = chat_payload(bundle)
        assert payload["model"] == "gpt-x"
        assert payload["temperature"] == 0.0
        assert payload["messages"][0]["role"] == "system"
        assert payload["messages"][1]["content"] == bundle.user_text
