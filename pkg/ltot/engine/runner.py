"""
Single two-party protocol execution.

The engine drives both strategy generators in lock step. A ``Send`` is
delivered when the peer is waiting in ``Receive``; an ``Invoke`` resolves
once both roles of a functionality are invoked. Classical losses are resent
transparently; a quantum loss (genuine, or declared by the party that just
received the message when the channel allows it) throws ``Restart`` into
both programs so each restarts its innermost restartable scope.

When neither party can move, the one that broke the turn order is blamed:
the party that should have spoken, or the one that spoke out of turn. An
honest program defines the turn order, so a conflict between an honest and
a cheating strategy is always the cheater's.
"""

import logging
from typing import Any, Dict, Optional, Tuple, Union

import numpy as np

from ..config import CLASSICAL_RESEND_LIMIT, LOG_ENGINE_EVENTS, MAX_ROUNDS
from ..errors import PreconditionError, ProtocolViolation
from ..logging_config import log_simulation_event
from ..metrics import simulation_metrics
from .messages import (
    ChannelConfig, ClassicalBits, Invoke, LossDeclaration, Party, PartyAbort,
    ProtocolOutcome, QuantumPayload, Receive, Restart, Send,
)
from .register import QuantumRegister
from .strategy import Functionality, PartyContext, ProtocolDescriptor, Strategy
from .transcript import Transcript, TranscriptEvent

_DONE = object()


class _Finished(Exception):
    def __init__(self, outcome: ProtocolOutcome):
        self.outcome = outcome


class Execution:
    def __init__(self, protocol: ProtocolDescriptor, alice: Strategy, bob: Strategy,
                 channel: ChannelConfig, seed: int):
        self.protocol = protocol
        self.channel = channel
        self.seed = seed
        channel_seq, nature_seq, alice_seq, bob_seq = np.random.SeedSequence(seed).spawn(4)
        self._channel_rng = np.random.default_rng(channel_seq)
        self.nature_rng = np.random.default_rng(nature_seq)
        self.register = QuantumRegister(self.nature_rng)
        self.transcript = Transcript(protocol=protocol.name, seed=seed)

        self.contexts = {
            Party.ALICE: PartyContext(Party.ALICE, np.random.default_rng(alice_seq), self),
            Party.BOB: PartyContext(Party.BOB, np.random.default_rng(bob_seq), self),
        }
        self._programs = {
            Party.ALICE: alice.program(self.contexts[Party.ALICE]),
            Party.BOB: bob.program(self.contexts[Party.BOB]),
        }
        self._honest = {Party.ALICE: alice.honest, Party.BOB: bob.honest}
        self._pending: Dict[Party, Any] = {}
        self._outputs: Dict[Party, Any] = {}
        self.round = 0
        self.attempt = 1
        self.restarts_used = 0
        self._attempt_rounds = 0
        self._last_actor = protocol.first_mover
        # party expected to speak next; None once the order is unknown
        self._turn: Optional[Party] = protocol.first_mover
        # quantum message each party received and has not answered yet
        self._unanswered: Dict[Party, Tuple[int, ...]] = {}

    # transcript helpers

    def _record(self, sender: str, kind: str, summary: str = "", lost: bool = False,
                restart: bool = False, data: Optional[Dict[str, Any]] = None):
        self.transcript.record(TranscriptEvent(
            round=self.round, attempt=self.attempt, sender=sender, kind=kind,
            summary=summary, lost=lost, restart=restart, data=data,
        ))

    def record_local(self, party: Party, kind: str, summary: str, data: Dict[str, Any]):
        self._record(party.value, kind, summary, data=data)

    def _debug(self, event_type: str, message: str, **fields):
        if LOG_ENGINE_EVENTS:
            log_simulation_event(event_type, message, level=logging.DEBUG,
                                 protocol=self.protocol.name, seed=self.seed, **fields)

    # program driving

    def _advance(self, party: Party, value: Any = None, throw: Optional[BaseException] = None):
        program = self._programs[party]
        self._last_actor = party
        try:
            action = program.throw(throw) if throw is not None else program.send(value)
        except StopIteration as stop:
            if stop.value is None:
                self._abort(party, "finished without an output")
            self._pending[party] = _DONE
            self._outputs[party] = stop.value
            return
        except PartyAbort as exc:
            self._abort(party, str(exc) or "aborted")
        except ProtocolViolation as exc:
            self._abort(party, exc.detail)
        except Restart:
            self._abort(party, "cannot restart")
        if not isinstance(action, (Send, Receive, Invoke)):
            self._abort(party, f"yielded {type(action).__name__}, not an action")
        self._pending[party] = action

    def _abort(self, party: Party, reason: str):
        self._record(party.value, "abort", reason)
        self._debug("abort", "execution aborted", party=party.value, reason=reason)
        raise _Finished(ProtocolOutcome.aborted(party, reason))

    def _done(self, party: Party) -> bool:
        return self._pending.get(party) is _DONE

    def _blame(self, party: Party) -> Party:
        """Shift blame for a broken turn order from an honest party to a cheating peer."""
        if self._honest[party] and not self._honest[party.peer]:
            return party.peer
        return party

    def _count_round(self, party: Party):
        self._attempt_rounds += 1
        bound = self.protocol.round_bound
        if self._attempt_rounds > bound:
            self._abort(self._blame(party), f"round bound {bound} exceeded in attempt {self.attempt}")

    # message handling

    def _deliver(self, sender: Party, message: Any):
        receiver = sender.peer
        answering = self._unanswered.pop(sender, None)
        if isinstance(message, LossDeclaration):
            if not self.channel.adversarial_loss_allowed:
                self._abort(sender, "loss declared on a channel without adversarial loss")
            if answering is None:
                self._abort(sender, "declared loss without an unanswered quantum message")
        self._count_round(sender)

        if isinstance(message, ClassicalBits):
            self._deliver_classical(sender, message)
            self._unanswered.pop(receiver, None)
        elif isinstance(message, QuantumPayload):
            if not self.register.holds(sender, message.handle):
                self._abort(sender, f"sent factors {list(message.handle)} it does not hold")
            self.round += 1
            if self._channel_rng.random() < self.channel.loss_rate:
                self._record(sender.value, "quantum", message.summary(), lost=True)
                simulation_metrics.increment_lost(self.protocol.name, "quantum")
                self.register.discard(message.handle)
                self._record(receiver.value, "loss", "reported lost")
                self._restart(lost_sender=sender)
                return
            self.register.transfer(message.handle, receiver)
            self._unanswered[receiver] = message.handle
            self._record(sender.value, "quantum", message.summary())
        elif isinstance(message, LossDeclaration):
            self.round += 1
            self._record(sender.value, "loss", message.summary())
            simulation_metrics.increment_declarations(self.protocol.name)
            self._restart(lost_sender=receiver)
            return
        else:
            self._abort(sender, f"cannot send {type(message).__name__}")
        self._turn = receiver
        self._advance(sender)
        self._advance(receiver, message)

    def _deliver_classical(self, sender: Party, message: ClassicalBits):
        resends = 0
        while self.channel.classical_loss_rate and self._channel_rng.random() < self.channel.classical_loss_rate:
            self.round += 1
            self._record(sender.value, "classical", message.summary(), lost=True)
            simulation_metrics.increment_lost(self.protocol.name, "classical")
            resends += 1
            if resends > CLASSICAL_RESEND_LIMIT:
                self._abort(sender, "classical resend limit reached")
        self.round += 1
        self._record(sender.value, "classical", message.summary())

    def _restart(self, lost_sender: Party):
        cap = self.channel.max_restarts
        if cap is not None and self.restarts_used >= cap:
            self._abort(lost_sender, f"restart limit {cap} reached")
        self.restarts_used += 1
        self._record("engine", "restart", f"attempt {self.attempt + 1}", restart=True)
        self.attempt += 1
        self._attempt_rounds = 0
        self._unanswered.clear()
        self._turn = None
        simulation_metrics.increment_restarts(self.protocol.name)
        self._debug("restart", "quantum message lost, restarting", attempt=self.attempt)
        for party in (self.protocol.first_mover, self.protocol.first_mover.peer):
            if not self._done(party):
                self.contexts[party].on_restart()
                self._advance(party, throw=Restart())

    def _invoke(self, actions: Dict[Party, Invoke]):
        functionality: Functionality = actions[Party.ALICE].functionality
        if actions[Party.BOB].functionality is not functionality:
            declared = self.protocol.functionalities
            strays = [p for p in Party if not any(actions[p].functionality is f for f in declared)]
            culprit = strays[0] if len(strays) == 1 else self._blame(self._last_actor)
            self._abort(culprit, "invoked a different functionality")
        role = actions[Party.ALICE].role
        if actions[Party.BOB].role is role:
            self._abort(self._blame(self._last_actor), f"both parties invoked {functionality.name} as {role.value}")
        self._count_round(self._last_actor)

        holder = {action.role: party for party, action in actions.items()}
        alice_result, bob_result, summary = functionality.resolve(
            actions[holder[Party.ALICE]].request, actions[holder[Party.BOB]].request, self.nature_rng)
        results = {holder[Party.ALICE]: alice_result, holder[Party.BOB]: bob_result}
        self.round += 1
        self._record(functionality.name, "invoke", summary)
        self._unanswered.clear()
        self._turn = None
        self._advance(Party.ALICE, results[Party.ALICE])
        self._advance(Party.BOB, results[Party.BOB])

    # scheduling

    def _step(self):
        order = (self.protocol.first_mover, self.protocol.first_mover.peer)
        if all(self._done(p) for p in order):
            raise _Finished(ProtocolOutcome.completed_with(
                self._outputs[Party.ALICE], self._outputs[Party.BOB]))
        if self.round > MAX_ROUNDS:
            self._abort(self._blame(self._last_actor), f"round limit {MAX_ROUNDS} exceeded")

        for party in order:
            action, peer_action = self._pending[party], self._pending[party.peer]
            if isinstance(action, Send):
                if isinstance(peer_action, Receive):
                    self._deliver(party, action.message)
                    return
                if peer_action is _DONE:
                    self._count_round(party)
                    self._record(party.value, "undelivered", action.message.summary())
                    self._advance(party)
                    return
        alice_action, bob_action = self._pending[Party.ALICE], self._pending[Party.BOB]
        if isinstance(alice_action, Invoke) and isinstance(bob_action, Invoke):
            self._invoke({Party.ALICE: alice_action, Party.BOB: bob_action})
            return
        self._stall(order)

    def _stall(self, order: Tuple[Party, Party]):
        for party in order:
            if self._done(party):
                culprit = self._blame(party)
                self._abort(culprit, "stopped while the peer was waiting" if culprit is party
                            else "waited on a finished peer")
        senders = [p for p in order if isinstance(self._pending[p], Send)]
        if len(senders) == 1:
            culprit = senders[0]
        elif senders:
            # both speaking: the one that did not hold the turn spoke out of it
            culprit = self._turn.peer if self._turn is not None else self._last_actor
        else:
            culprit = self._turn if self._turn is not None else self._last_actor
        culprit = self._blame(culprit)
        self._abort(culprit, "sent out of turn" if isinstance(self._pending[culprit], Send) else "stalled")

    def run(self) -> Tuple[ProtocolOutcome, Transcript]:
        try:
            for party in (self.protocol.first_mover, self.protocol.first_mover.peer):
                self._advance(party)
            while True:
                self._step()
        except _Finished as finished:
            outcome = finished.outcome
        finally:
            for program in self._programs.values():
                program.close()
        self.transcript.final_state = self.register.summary()
        simulation_metrics.record_execution(self.protocol.name, outcome.label, self.round)
        return outcome, self.transcript


def resolve_protocol(protocol: Union[str, ProtocolDescriptor]) -> ProtocolDescriptor:
    if isinstance(protocol, ProtocolDescriptor):
        return protocol
    from ..protocols.registry import get_protocol
    return get_protocol(protocol)


def run_protocol(protocol: Union[str, ProtocolDescriptor], alice: Strategy, bob: Strategy,
                 channel: Optional[ChannelConfig] = None, seed: int = 0) -> Tuple[ProtocolOutcome, Transcript]:
    """Execute one run; deterministic given ``seed``."""
    descriptor = resolve_protocol(protocol)
    if alice.role is not Party.ALICE or bob.role is not Party.BOB:
        raise PreconditionError(f"strategy roles do not match: alice={alice.role.value}, bob={bob.role.value}")
    if seed < 0:
        raise PreconditionError("seed must be nonnegative")
    return Execution(descriptor, alice, bob, channel or ChannelConfig(), seed).run()
