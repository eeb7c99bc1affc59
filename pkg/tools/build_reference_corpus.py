#!/usr/bin/env python3
"""Build the shipped 120-item diagnostic corpus (manifest + images).

Forty items per ambiguity trigger, drawn from interpreting-relevant domains
(healthcare, business, public presentations). Every item is self-checked:
each sense's gold reference must judge as that sense, token counts must sit
in [5, 13] unless flagged, and no marker may belong to two senses. Images
are small deterministic renderings of the gold caption, standing in for the
original photographs which are not redistributable.

Run from the repo root:  python3 tools/build_reference_corpus.py
"""

from __future__ import annotations

import hashlib
import json
import sys
import textwrap
from pathlib import Path

from PIL import Image, ImageDraw

REPO = Path(__file__).resolve().parent.parent
DATA_DIR = REPO / "src" / "vgi" / "data"
IMAGE_DIR = DATA_DIR / "images"

sys.path.insert(0, str(REPO / "src"))

from vgi.corpus import CorpusItem, token_count  # noqa: E402
from vgi.evalstats import Verdict, judge  # noqa: E402

# --------------------------------------------------------------------------
# Lexical items: 20 Italian -> English, 20 English -> Italian.
# Each entry: (slug, source_text, senses, intended_label, caption[, flags])
# where senses = [(label, description, markers, gold_reference), ...]

LEXICAL_IT_EN = [
    (
        "chiave",
        "Passami la chiave",
        [
            ("key", "door key", ["key", "keys"], "Give me the key."),
            ("wrench", "mechanic's tool", ["wrench", "spanner"], "Give me the wrench."),
        ],
        "wrench",
        "A mechanic's workshop with tools on a bench; a wrench lies next to an open engine.",
        {"relaxed_length": True, "notes": "short demonstration utterance kept verbatim"},
    ),
    (
        "penna",
        "Ho trovato una penna sotto il tavolo.",
        [
            ("pen", "writing instrument", ["pen"], "I found a pen under the table."),
            ("feather", "bird feather", ["feather"], "I found a feather under the table."),
        ],
        "pen",
        "An office meeting room; a ballpoint pen lies on the carpet under a table.",
    ),
    (
        "calcio",
        "A mio figlio piace molto il calcio.",
        [
            ("football", "the sport", ["football", "soccer"], "My son really likes football."),
            ("calcium", "the mineral", ["calcium"], "My son really likes calcium."),
        ],
        "football",
        "A school playground; children chase a football toward a small goal.",
    ),
    (
        "piano",
        "Il piano non mi convince affatto.",
        [
            ("plan", "course of action", ["plan"], "The plan does not convince me at all."),
            ("piano", "the instrument", ["piano"], "The piano does not convince me at all."),
        ],
        "plan",
        "A business meeting; a whiteboard shows a project timeline with arrows.",
    ),
    (
        "vite",
        "La vite è danneggiata e va sostituita.",
        [
            ("screw", "metal fastener", ["screw"], "The screw is damaged and must be replaced."),
            ("vine", "grapevine", ["vine", "grapevine"], "The vine is damaged and must be replaced."),
        ],
        "screw",
        "A repair bench with a screwdriver and a stripped screw in a plastic tray.",
    ),
    (
        "tasso",
        "Il tasso è aumentato ancora questo mese.",
        [
            ("rate", "interest rate", ["rate"], "The rate has gone up again this month."),
            ("badger", "the animal", ["badger"], "The badger has grown again this month."),
        ],
        "rate",
        "A bank office; a screen shows an interest-rate chart climbing.",
    ),
    (
        "pesca",
        "La pesca è la mia più grande passione.",
        [
            ("fishing", "the activity", ["fishing"], "Fishing is my greatest passion."),
            ("peach", "the fruit", ["peach", "peaches"], "The peach is my greatest passion."),
        ],
        "fishing",
        "A man stands on a lakeside pier at dawn holding a fishing rod.",
    ),
    (
        "campione",
        "Il campione è arrivato ieri mattina.",
        [
            ("sample", "lab specimen", ["sample"], "The sample arrived yesterday morning."),
            ("champion", "contest winner", ["champion"], "The champion arrived yesterday morning."),
        ],
        "sample",
        "A laboratory bench; a courier box with labeled specimen vials sits open.",
    ),
    (
        "riso",
        "Il riso riempiva tutta la stanza.",
        [
            ("laughter", "the sound", ["laughter", "laughing"], "Laughter filled the whole room."),
            ("rice", "the grain", ["rice"], "Rice filled the whole room."),
        ],
        "laughter",
        "A dinner party; guests around a table laugh together.",
    ),
    (
        "batteria",
        "Devo sostituire la batteria entro questa settimana.",
        [
            ("battery", "power cell", ["battery"], "I have to replace the battery by this week."),
            ("drums", "drum kit", ["drums", "drum kit"], "I have to replace the drums by this week."),
        ],
        "battery",
        "A car workshop; a mechanic lifts a car battery out of an engine bay.",
    ),
    (
        "espresso",
        "Ho perso l'espresso delle otto.",
        [
            ("train", "express train", ["express", "express train"], "I missed the eight o'clock express."),
            ("coffee", "espresso coffee", ["espresso"], "I missed the eight o'clock espresso."),
        ],
        "train",
        "A railway platform; the departure board shows an express leaving at eight.",
    ),
    (
        "dado",
        "Non trovo più il dado.",
        [
            ("nut", "hardware nut", ["nut"], "I cannot find the nut anymore."),
            ("die", "gaming die", ["die", "dice"], "I cannot find the die anymore."),
        ],
        "nut",
        "A workbench with bolts and washers; one bolt is missing its nut.",
    ),
    (
        "boa",
        "Hanno avvistato una boa questa mattina.",
        [
            ("buoy", "floating marker", ["buoy"], "They spotted a buoy this morning."),
            ("boa", "the snake", ["boa", "boa constrictor"], "They spotted a boa this morning."),
        ],
        "buoy",
        "A harbor at sunrise; a red buoy floats near the pier.",
    ),
    (
        "pianta",
        "La pianta in cucina è nuova.",
        [
            ("plant", "potted plant", ["plant"], "The plant in the kitchen is new."),
            ("plan", "floor plan", ["plan", "floor plan", "map"], "The plan in the kitchen is new."),
        ],
        "plant",
        "A bright kitchen; a potted green plant sits on the windowsill.",
    ),
    (
        "tempo",
        "Il tempo è cambiato all'improvviso.",
        [
            ("weather", "the weather", ["weather"], "The weather changed all of a sudden."),
            ("time", "the times", ["time", "times"], "The times changed all of a sudden."),
        ],
        "weather",
        "A view from an office window; dark storm clouds roll over the city.",
    ),
    (
        "filo",
        "Mi passi quel filo, per favore?",
        [
            ("wire", "electrical wire", ["wire", "cable"], "Can you pass me that wire, please?"),
            ("thread", "sewing thread", ["thread", "string"], "Can you pass me that thread, please?"),
        ],
        "wire",
        "An electronics bench; coils of insulated wire lie beside a soldering iron.",
    ),
    (
        "titolo",
        "Ha venduto i titoli questa mattina.",
        [
            ("securities", "financial assets", ["securities", "shares", "bonds", "stocks"], "He sold the securities this morning."),
            ("titles", "book titles", ["titles"], "He sold the titles this morning."),
        ],
        "securities",
        "A trading desk with monitors showing falling stock prices.",
    ),
    (
        "torre",
        "La torre era ben difesa.",
        [
            ("rook", "chess piece", ["rook"], "The rook was well defended."),
            ("tower", "the building", ["tower"], "The tower was well defended."),
        ],
        "rook",
        "A chess tournament table; a rook stands guarded behind pawns.",
    ),
    (
        "cuffia",
        "Ho dimenticato la cuffia a casa.",
        [
            ("swimcap", "swimming cap", ["swim cap", "swimming cap", "cap"], "I forgot my swim cap at home."),
            ("headphones", "audio headset", ["headphones", "headset"], "I forgot my headphones at home."),
        ],
        "swimcap",
        "An indoor swimming pool; swimmers at the edge wear bright swim caps.",
    ),
    (
        "ricetta",
        "Ho perso la ricetta di nuovo.",
        [
            ("prescription", "medical prescription", ["prescription"], "I lost the prescription again."),
            ("recipe", "cooking recipe", ["recipe"], "I lost the recipe again."),
        ],
        "prescription",
        "A pharmacy counter; a patient searches a bag while the pharmacist waits.",
    ),
]

LEXICAL_EN_IT = [
    (
        "plaster-doctor",
        "The doctor gave him a plaster.",
        [
            ("bandage", "adhesive bandage", ["cerotto"], "Il dottore gli ha dato un cerotto."),
            ("wallplaster", "wall plaster", ["intonaco"], "Il dottore gli ha dato dell'intonaco."),
        ],
        "bandage",
        "A doctor's office; a doctor hands a small adhesive bandage to a patient.",
    ),
    (
        "plaster-cooking",
        "He put a plaster on it, because he cut his finger while cooking.",
        [
            ("bandage", "adhesive bandage", ["cerotto"], "Ci ha messo un cerotto, perché si è tagliato un dito cucinando."),
            ("wallplaster", "wall plaster", ["intonaco"], "Ci ha messo dell'intonaco, perché si è tagliato un dito cucinando."),
        ],
        "bandage",
        "A kitchen; a man holds his cut finger under running water near a cutting board.",
        {"notes": "control item: the co-text alone already resolves the sense"},
    ),
    (
        "bank",
        "We agreed to meet near the bank.",
        [
            ("riverbank", "edge of a river", ["riva", "argine"], "Ci siamo messi d'accordo per vederci vicino alla riva."),
            ("bank", "financial institution", ["banca"], "Ci siamo messi d'accordo per vederci vicino alla banca."),
        ],
        "riverbank",
        "A grassy riverbank with a footpath along the water and two benches.",
    ),
    (
        "glasses",
        "Could you bring the glasses, please?",
        [
            ("drinking", "drinking glasses", ["bicchieri"], "Puoi portare i bicchieri, per favore?"),
            ("eyewear", "spectacles", ["occhiali"], "Puoi portare gli occhiali, per favore?"),
        ],
        "drinking",
        "A dinner table set for guests; empty water glasses are still missing.",
    ),
    (
        "nail",
        "I need one more nail to finish.",
        [
            ("hardware", "metal nail", ["chiodo"], "Mi serve ancora un chiodo per finire."),
            ("fingernail", "fingernail", ["unghia"], "Mi serve ancora un'unghia per finire."),
        ],
        "hardware",
        "A carpentry workshop; a half-built wooden frame and a box of nails.",
    ),
    (
        "bat",
        "There was a bat in the garage.",
        [
            ("animal", "flying mammal", ["pipistrello"], "C'era un pipistrello nel garage."),
            ("club", "baseball bat", ["mazza"], "C'era una mazza nel garage."),
        ],
        "animal",
        "A dim garage; a small bat hangs from a beam near the ceiling.",
    ),
    (
        "match",
        "He asked me for a match.",
        [
            ("fire", "matchstick", ["fiammifero"], "Mi ha chiesto un fiammifero."),
            ("game", "sports match", ["partita"], "Mi ha chiesto una partita."),
        ],
        "fire",
        "A campsite at dusk; a man crouches by an unlit fire pit holding a candle.",
    ),
    (
        "pitch",
        "We reviewed the pitch this morning.",
        [
            ("presentation", "sales pitch", ["presentazione"], "Abbiamo rivisto la presentazione stamattina."),
            ("field", "sports field", ["campo"], "Abbiamo rivisto il campo stamattina."),
        ],
        "presentation",
        "A boardroom; slides of a sales deck are projected on the wall.",
    ),
    (
        "mouse",
        "There is a mouse under the desk.",
        [
            ("animal", "rodent", ["topo"], "C'è un topo sotto la scrivania."),
            ("device", "computer mouse", ["mouse"], "C'è un mouse sotto la scrivania."),
        ],
        "device",
        "An office desk; a wireless computer mouse lies on the floor among cables.",
    ),
    (
        "sentence",
        "The sentence was too long.",
        [
            ("verdict", "prison sentence", ["condanna", "pena"], "La condanna era troppo lunga."),
            ("grammar", "grammatical sentence", ["frase"], "La frase era troppo lunga."),
        ],
        "verdict",
        "A courtroom; a judge reads from a file while the defendant stands.",
    ),
    (
        "palm",
        "She drew a palm on the card.",
        [
            ("tree", "palm tree", ["palma"], "Ha disegnato una palma sul biglietto."),
            ("hand", "palm of the hand", ["palmo"], "Ha disegnato un palmo sul biglietto."),
        ],
        "tree",
        "A beach scene; a tall palm tree leans over white sand.",
    ),
    (
        "pupil",
        "The pupil responded very quickly.",
        [
            ("student", "school pupil", ["alunno", "alunna", "allievo", "allieva"], "L'alunno ha risposto molto rapidamente."),
            ("eye", "pupil of the eye", ["pupilla"], "La pupilla ha risposto molto rapidamente."),
        ],
        "student",
        "A classroom; a boy raises his hand in the front row.",
    ),
    (
        "cell",
        "The cell was extremely small.",
        [
            ("biology", "biological cell", ["cellula"], "La cellula era estremamente piccola."),
            ("prison", "prison cell", ["cella"], "La cella era estremamente piccola."),
        ],
        "biology",
        "A research lab; a microscope screen shows a single stained cell.",
    ),
    (
        "plant",
        "The plant needs more attention now.",
        [
            ("factory", "industrial plant", ["fabbrica", "stabilimento"], "La fabbrica ha bisogno di più attenzione adesso."),
            ("botany", "green plant", ["pianta"], "La pianta ha bisogno di più attenzione adesso."),
        ],
        "factory",
        "An industrial hall with assembly lines and two idle forklifts.",
    ),
    (
        "cold",
        "You should do something about the cold.",
        [
            ("illness", "common cold", ["raffreddore"], "Dovresti fare qualcosa per il raffreddore."),
            ("temperature", "low temperature", ["freddo"], "Dovresti fare qualcosa per il freddo."),
        ],
        "illness",
        "A living room; a man wrapped in a blanket sneezes into a tissue.",
    ),
    (
        "file",
        "Please bring me the file now.",
        [
            ("folder", "document file", ["pratica", "fascicolo"], "Per favore, portami il fascicolo adesso."),
            ("tool", "metal file", ["lima"], "Per favore, portami la lima adesso."),
        ],
        "folder",
        "A law office; shelves of labeled case folders behind a desk.",
    ),
    (
        "jam",
        "The jam this morning was terrible.",
        [
            ("traffic", "traffic jam", ["ingorgo", "traffico"], "L'ingorgo stamattina era terribile."),
            ("preserve", "fruit jam", ["marmellata"], "La marmellata stamattina era terribile."),
        ],
        "traffic",
        "A highway at rush hour; cars sit bumper to bumper in the rain.",
    ),
    (
        "draft",
        "They complained about the draft again.",
        [
            ("air", "cold air flow", ["corrente", "spiffero"], "Si sono lamentati di nuovo della corrente."),
            ("document", "draft text", ["bozza"], "Si sono lamentati di nuovo della bozza."),
        ],
        "air",
        "An old meeting room; a window does not close and the curtain moves.",
    ),
    (
        "trunk",
        "The trunk was completely full.",
        [
            ("car", "car trunk", ["bagagliaio"], "Il bagagliaio era completamente pieno."),
            ("chest", "storage chest", ["baule"], "Il baule era completamente pieno."),
        ],
        "car",
        "A parked car with its trunk open, packed with suitcases.",
    ),
    (
        "case",
        "The case was closed yesterday.",
        [
            ("legal", "court case", ["caso"], "Il caso è stato chiuso ieri."),
            ("container", "carrying case", ["valigia", "custodia"], "La valigia è stata chiusa ieri."),
        ],
        "legal",
        "A courtroom; a gavel rests on a closed case file.",
    ),
]

# --------------------------------------------------------------------------
# Gender items: English -> Italian. Each entry:
# (slug, source_text, masc marker(s), fem marker(s), masc gold, fem gold,
#  intended 'm'|'f', caption)

GENDER_ITEMS = [
    ("doctor", "The doctor will see you in a few minutes.",
     ["dottore"], ["dottoressa"],
     "Il dottore la riceverà tra pochi minuti.", "La dottoressa la riceverà tra pochi minuti.",
     "f", "A clinic consulting room; a female doctor in a white coat reviews a chart."),
    ("lawyer", "My lawyer will call you back tomorrow morning.",
     ["avvocato"], ["avvocata"],
     "Il mio avvocato la richiamerà domani mattina.", "La mia avvocata la richiamerà domani mattina.",
     "m", "A law office; a male lawyer in a suit dials a phone at his desk."),
    ("nurse", "The nurse checked the test results again.",
     ["infermiere"], ["infermiera"],
     "L'infermiere ha ricontrollato i risultati degli esami.", "L'infermiera ha ricontrollato i risultati degli esami.",
     "f", "A hospital ward; a female nurse studies a monitor beside a bed."),
    ("director", "Our director approved the new budget without questions.",
     ["direttore"], ["direttrice"],
     "Il nostro direttore ha approvato il nuovo budget senza domande.", "La nostra direttrice ha approvato il nuovo budget senza domande.",
     "f", "A corner office; a woman signs a document at a large desk."),
    ("professor", "The professor canceled the morning lecture.",
     ["professore"], ["professoressa"],
     "Il professore ha annullato la lezione del mattino.", "La professoressa ha annullato la lezione del mattino.",
     "m", "A lecture hall; a gray-haired man posts a notice on the door."),
    ("researcher", "The researcher presented the main findings at the conference.",
     ["ricercatore"], ["ricercatrice"],
     "Il ricercatore ha presentato i risultati principali alla conferenza.", "La ricercatrice ha presentato i risultati principali alla conferenza.",
     "f", "A conference stage; a woman points at a results chart on a slide."),
    ("translator", "The translator finished the document late last night.",
     ["traduttore"], ["traduttrice"],
     "Il traduttore ha finito il documento ieri sera tardi.", "La traduttrice ha finito il documento ieri sera tardi.",
     "m", "A home office; a man works between two monitors of bilingual text."),
    ("waiter", "The waiter brought us the wrong order twice.",
     ["cameriere"], ["cameriera"],
     "Il cameriere ci ha portato due volte l'ordine sbagliato.", "La cameriera ci ha portato due volte l'ordine sbagliato.",
     "f", "A restaurant; a waitress apologizes while holding a plate."),
    ("singer", "The singer performed for almost two hours.",
     ["il cantante"], ["la cantante"],
     "Il cantante si è esibito per quasi due ore.", "La cantante si è esibita per quasi due ore.",
     "f", "A concert stage; a woman sings under a spotlight with a band behind."),
    ("student", "The student asked a difficult question.",
     ["studente"], ["studentessa"],
     "Lo studente ha fatto una domanda difficile.", "La studentessa ha fatto una domanda difficile.",
     "m", "A seminar room; a young man raises his hand mid-discussion."),
    ("cook", "The cook prepared something special for tonight's guests.",
     ["cuoco"], ["cuoca"],
     "Il cuoco ha preparato qualcosa di speciale per gli ospiti di stasera.", "La cuoca ha preparato qualcosa di speciale per gli ospiti di stasera.",
     "f", "A restaurant kitchen; a female chef plates a dessert."),
    ("engineer", "The engineer signed off the revised plans this morning.",
     ["ingegnere"], ["ingegnera"],
     "L'ingegnere ha approvato stamattina i progetti rivisti.", "L'ingegnera ha approvato stamattina i progetti rivisti.",
     "m", "A construction site office; a man in a hard hat stamps blueprints."),
    ("architect", "The architect presented the final design.",
     ["architetto"], ["architetta"],
     "L'architetto ha presentato il progetto definitivo.", "L'architetta ha presentato il progetto definitivo.",
     "f", "A studio; a woman unveils a building model to clients."),
    ("surgeon", "The surgeon explained the whole procedure to the family.",
     ["chirurgo"], ["chirurga"],
     "Il chirurgo ha spiegato tutta la procedura alla famiglia.", "La chirurga ha spiegato tutta la procedura alla famiglia.",
     "m", "A hospital consultation room; a male surgeon points at an X-ray."),
    ("colleague", "My colleague is always very punctual.",
     ["il mio collega"], ["la mia collega"],
     "Il mio collega è sempre molto puntuale.", "La mia collega è sempre molto puntuale.",
     "f", "An office entrance at 8:00; a woman badges in, coffee in hand."),
    ("accountant", "The accountant reviewed the quarterly numbers very carefully.",
     ["ragioniere"], ["ragioniera"],
     "Il ragioniere ha rivisto con grande attenzione i numeri del trimestre.", "La ragioniera ha rivisto con grande attenzione i numeri del trimestre.",
     "m", "An accounting office; a man checks a spreadsheet with a calculator."),
    ("journalist", "The journalist asked about the merger.",
     ["il giornalista"], ["la giornalista"],
     "Il giornalista ha chiesto della fusione.", "La giornalista ha chiesto della fusione.",
     "f", "A press conference; a woman holds up a recorder to ask a question."),
    ("scientist", "The scientist described the experiment briefly.",
     ["scienziato"], ["scienziata"],
     "Lo scienziato ha descritto brevemente l'esperimento.", "La scienziata ha descritto brevemente l'esperimento.",
     "f", "A laboratory; a woman in a lab coat gestures at an apparatus."),
    ("assistant", "The assistant scheduled the next meeting for Friday afternoon.",
     ["il nostro assistente"], ["la nostra assistente"],
     "Il nostro assistente ha fissato la prossima riunione per venerdì pomeriggio.", "La nostra assistente ha fissato la prossima riunione per venerdì pomeriggio.",
     "m", "An office reception; a man updates a wall calendar."),
    ("psychologist", "The psychologist listened without taking any notes.",
     ["psicologo"], ["psicologa"],
     "Lo psicologo ha ascoltato senza prendere nessun appunto.", "La psicologa ha ascoltato senza prendere nessun appunto.",
     "f", "A therapy room; a woman in an armchair listens to a patient."),
    ("dentist", "The dentist recommended a completely different treatment.",
     ["il dentista"], ["la dentista"],
     "Il dentista ha consigliato un trattamento completamente diverso.", "La dentista ha consigliato un trattamento completamente diverso.",
     "m", "A dental practice; a male dentist shows a patient a tooth model."),
    ("trainer", "The trainer changed the whole training program last week.",
     ["allenatore"], ["allenatrice"],
     "L'allenatore ha cambiato tutto il programma di allenamento la settimana scorsa.", "L'allenatrice ha cambiato tutto il programma di allenamento la settimana scorsa.",
     "f", "A gym; a woman with a whistle pins a new plan to the board."),
    ("consultant", "The consultant suggested a safer option.",
     ["il consulente"], ["la consulente"],
     "Il consulente ha suggerito un'opzione più sicura.", "La consulente ha suggerito un'opzione più sicura.",
     "m", "A meeting room; a man in a suit draws a risk matrix on a flip chart."),
    ("farmer", "The farmer sold the old tractor at the fair.",
     ["contadino"], ["contadina"],
     "Il contadino ha venduto il vecchio trattore alla fiera.", "La contadina ha venduto il vecchio trattore alla fiera.",
     "f", "A farmyard; a woman hands over tractor keys to a buyer."),
    ("baker", "The baker starts working well before dawn.",
     ["fornaio"], ["fornaia"],
     "Il fornaio inizia a lavorare ben prima dell'alba.", "La fornaia inizia a lavorare ben prima dell'alba.",
     "m", "A bakery before sunrise; a man slides loaves into the oven."),
    ("tailor", "The tailor adjusted the jacket in ten minutes.",
     ["sarto"], ["sarta"],
     "Il sarto ha sistemato la giacca in dieci minuti.", "La sarta ha sistemato la giacca in dieci minuti.",
     "f", "A tailor's shop; a woman pins the sleeve of a jacket on a mannequin."),
    ("librarian", "The librarian found the missing volume.",
     ["bibliotecario"], ["bibliotecaria"],
     "Il bibliotecario ha trovato il volume mancante.", "La bibliotecaria ha trovato il volume mancante.",
     "m", "A library; a man on a ladder pulls a book from a high shelf."),
    ("cashier", "The cashier counted the money twice.",
     ["cassiere"], ["cassiera"],
     "Il cassiere ha contato i soldi due volte.", "La cassiera ha contato i soldi due volte.",
     "f", "A supermarket checkout; a woman counts banknotes at the till."),
    ("interpreter", "The interpreter clarified the last sentence for everyone.",
     ["il nostro interprete"], ["la nostra interprete"],
     "Il nostro interprete ha chiarito l'ultima frase per tutti.", "La nostra interprete ha chiarito l'ultima frase per tutti.",
     "f", "A conference booth; a woman with headphones speaks into a microphone."),
    ("photographer", "The photographer arrived a bit late.",
     ["fotografo"], ["fotografa"],
     "Il fotografo è arrivato un po' in ritardo.", "La fotografa è arrivata un po' in ritardo.",
     "m", "An event hall; a man with two cameras hurries through the door."),
    ("musician", "The musician practiced all afternoon today.",
     ["il musicista"], ["la musicista"],
     "Il musicista ha provato tutto il pomeriggio oggi.", "La musicista ha provato tutto il pomeriggio oggi.",
     "f", "A rehearsal room; a woman plays a cello beside a music stand."),
    ("veterinarian", "The veterinarian examined the older dog with great care.",
     ["veterinario"], ["veterinaria"],
     "Il veterinario ha visitato con grande cura il cane più anziano.", "La veterinaria ha visitato con grande cura il cane più anziano.",
     "m", "A veterinary clinic; a man checks an old labrador on the table."),
    ("judge", "The judge postponed the final hearing.",
     ["il giudice"], ["la giudice"],
     "Il giudice ha rinviato l'udienza finale.", "La giudice ha rinviato l'udienza finale.",
     "f", "A courtroom bench; a female judge in robes consults her calendar."),
    ("mayor", "The mayor promised a quick answer to the residents.",
     ["sindaco"], ["sindaca"],
     "Il sindaco ha promesso una risposta rapida ai residenti.", "La sindaca ha promesso una risposta rapida ai residenti.",
     "m", "A town hall press point; a man with a sash speaks to reporters."),
    ("minister", "The minister avoided the second question.",
     ["ministro"], ["ministra"],
     "Il ministro ha evitato la seconda domanda.", "La ministra ha evitato la seconda domanda.",
     "f", "A parliament lobby; a woman walks past microphones without stopping."),
    ("secretary", "The secretary prepared all the documents for the signing.",
     ["segretario"], ["segretaria"],
     "Il segretario ha preparato tutti i documenti per la firma.", "La segretaria ha preparato tutti i documenti per la firma.",
     "m", "An office; a man arranges signed folders into neat stacks."),
    ("painter", "The painter finished the portrait yesterday.",
     ["pittore"], ["pittrice"],
     "Il pittore ha finito il ritratto ieri.", "La pittrice ha finito il ritratto ieri.",
     "f", "An art studio; a woman steps back from a finished portrait."),
    ("writer", "The writer signed copies after the talk.",
     ["scrittore"], ["scrittrice"],
     "Lo scrittore ha firmato copie dopo l'incontro.", "La scrittrice ha firmato copie dopo l'incontro.",
     "m", "A bookshop event; a man signs books at a table with a queue."),
    ("pharmacist", "The pharmacist explained the correct dosage.",
     ["il farmacista"], ["la farmacista"],
     "Il farmacista ha spiegato il dosaggio corretto.", "La farmacista ha spiegato il dosaggio corretto.",
     "f", "A pharmacy; a woman behind the counter points at a label."),
    ("neighbor", "My neighbor complained about the noise again.",
     ["vicino"], ["vicina"],
     "Il mio vicino si è lamentato di nuovo del rumore.", "La mia vicina si è lamentata di nuovo del rumore.",
     "m", "An apartment hallway; a man knocks on a door, gesturing upstairs."),
]

# --------------------------------------------------------------------------
# Syntactic items: English -> Italian.
# Adjective scope: (slug, text, first-only gold/marker, both gold/marker, intended, caption)

SYN_ADJ_SCOPE = [
    ("green-shirts", "Paul bought green shirts and shoes.",
     "Paolo ha comprato camicie verdi e scarpe.", "camicie verdi e scarpe",
     "Paolo ha comprato camicie e scarpe verdi.", "camicie e scarpe verdi",
     "both", "A clothes shop; green shirts and green shoes are laid out together."),
    ("fresh-juice", "She ordered fresh juice and biscuits for the guests.",
     "Ha ordinato succo fresco e biscotti per gli ospiti.", "succo fresco e biscotti",
     "Ha ordinato succo e biscotti freschi per gli ospiti.", "succo e biscotti freschi",
     "first_only", "A café counter; freshly squeezed juice beside packaged biscuits."),
    ("old-books", "They sell old books and maps at the weekend market.",
     "Vendono libri antichi e mappe al mercato del fine settimana.", "libri antichi e mappe",
     "Vendono libri e mappe antichi al mercato del fine settimana.", "libri e mappe antichi",
     "both", "An antiques stall; both the books and the maps look centuries old."),
    ("small-boxes", "We need small boxes and labels for the shipment.",
     "Ci servono scatole piccole e etichette per la spedizione.", "scatole piccole e etichette",
     "Ci servono scatole e etichette piccole per la spedizione.", "scatole e etichette piccole",
     "first_only", "A mailroom; tiny boxes stacked beside standard-size labels."),
    ("white-houses", "He photographed white houses and churches during the trip.",
     "Ha fotografato case bianche e chiese durante il viaggio.", "case bianche e chiese",
     "Ha fotografato case e chiese bianche durante il viaggio.", "case e chiese bianche",
     "both", "A hillside village; whitewashed houses and a white church."),
    ("experienced-nurses", "They hired experienced nurses and assistants for the new ward.",
     "Hanno assunto infermiere esperte e assistenti per il nuovo reparto.", "infermiere esperte e assistenti",
     "Hanno assunto infermiere e assistenti esperte per il nuovo reparto.", "infermiere e assistenti esperte",
     "first_only", "A hospital HR board: senior nurses, newly graduated assistants."),
    ("warm-sweaters", "She packed warm sweaters and trousers for the mountain trip.",
     "Ha messo in valigia maglioni caldi e pantaloni per la gita in montagna.", "maglioni caldi e pantaloni",
     "Ha messo in valigia maglioni e pantaloni caldi per la gita in montagna.", "maglioni e pantaloni caldi",
     "both", "An open suitcase; wool sweaters and thick fleece-lined trousers."),
    ("old-clocks", "The shop repairs old clocks and radios from every era.",
     "Il negozio ripara orologi antichi e radio di ogni epoca.", "orologi antichi e radio",
     "Il negozio ripara orologi e radio antichi di ogni epoca.", "orologi e radio antichi",
     "both", "A repair shop window full of antique clocks and vintage radios."),
    ("rare-coins", "He collects rare coins and stamps from all over Europe.",
     "Colleziona monete rare e francobolli da tutta Europa.", "monete rare e francobolli",
     "Colleziona monete e francobolli rari da tutta Europa.", "monete e francobolli rari",
     "first_only", "A collector's desk; rare coins in cases next to ordinary stamps."),
    ("tall-towers", "We photographed tall towers and bridges on the city tour.",
     "Abbiamo fotografato torri alte e ponti durante il giro della città.", "torri alte e ponti",
     "Abbiamo fotografato torri e ponti alti durante il giro della città.", "torri e ponti alti",
     "both", "A city skyline; high towers and a tall suspension bridge."),
    ("local-cheeses", "The menu lists local cheeses and wines from nearby farms.",
     "Il menù propone formaggi locali e vini di fattorie vicine.", "formaggi locali e vini",
     "Il menù propone formaggi e vini locali di fattorie vicine.", "formaggi e vini locali",
     "both", "A trattoria chalkboard: cheeses and wines, all from the region."),
    ("small-plants", "She watered the small plants and flowers on the balcony.",
     "Ha annaffiato le piante piccole e i fiori sul balcone.", "piante piccole e i fiori",
     "Ha annaffiato le piante e i fiori piccoli sul balcone.", "piante e i fiori piccoli",
     "first_only", "A greenhouse; seedling pots beside tall mature flowers."),
    ("old-doors", "They painted the old doors and windows over the weekend.",
     "Hanno verniciato le porte vecchie e le finestre durante il fine settimana.", "porte vecchie e le finestre",
     "Hanno verniciato le porte e le finestre vecchie durante il fine settimana.", "porte e le finestre vecchie",
     "both", "A renovation site; weathered doors and equally weathered windows."),
    ("young-designers", "The firm hires young designers and engineers every spring.",
     "L'azienda assume progettisti giovani e ingegneri ogni primavera.", "progettisti giovani e ingegneri",
     "L'azienda assume progettisti e ingegneri giovani ogni primavera.", "progettisti e ingegneri giovani",
     "both", "A startup office; a very young team at shared desks."),
    ("expensive-paintings", "He donated expensive paintings and sculptures to the museum.",
     "Ha donato quadri costosi e sculture al museo.", "quadri costosi e sculture",
     "Ha donato quadri e sculture costosi al museo.", "quadri e sculture costosi",
     "first_only", "A museum donation: gilded paintings beside modest plaster casts."),
    ("italian-wines", "She bought Italian wines and cheeses for the reception.",
     "Ha comprato vini italiani e formaggi per il ricevimento.", "vini italiani e formaggi",
     "Ha comprato vini e formaggi italiani per il ricevimento.", "vini e formaggi italiani",
     "both", "A delicatessen bag; Chianti bottles and Parmigiano wedges."),
    ("ripe-peaches", "The market sells ripe peaches and plums all summer long.",
     "Il mercato vende pesche mature e susine per tutta l'estate.", "pesche mature e susine",
     "Il mercato vende pesche e susine mature per tutta l'estate.", "pesche e susine mature",
     "both", "A fruit stall; deep-colored ripe peaches and plums."),
    ("broken-chairs", "He fixed the broken chairs and tables before the meeting.",
     "Ha riparato le sedie rotte e i tavoli prima della riunione.", "sedie rotte e i tavoli",
     "Ha riparato le sedie e i tavoli rotti prima della riunione.", "sedie e i tavoli rotti",
     "first_only", "A workshop; chairs with split legs beside intact tables."),
]

# PP attachment: instrumental ("usando X") vs possessor ("che aveva X").

SYN_PP_ATTACH = [
    ("camera-woman", "She photographed the woman with the camera.",
     "Ha fotografato la donna usando la macchina fotografica.",
     "Ha fotografato la donna che aveva la macchina fotografica.",
     "instrument", "A photographer aims her camera at a woman who carries nothing."),
    ("binoculars-man", "He saw the man with the binoculars.",
     "Ha visto l'uomo usando il binocolo.",
     "Ha visto l'uomo che aveva il binocolo.",
     "possessor", "A park; the observed man holds binoculars, the watcher does not."),
    ("flashlight-guard", "She pointed at the guard with the flashlight during the drill.",
     "Ha indicato la guardia usando la torcia durante l'esercitazione.",
     "Ha indicato la guardia che aveva la torcia durante l'esercitazione.",
     "instrument", "A dark warehouse; a woman sweeps her flashlight toward a guard."),
    ("pencil-artist", "He sketched the artist with the pencil at the workshop.",
     "Ha ritratto l'artista usando la matita al laboratorio.",
     "Ha ritratto l'artista che aveva la matita al laboratorio.",
     "possessor", "A studio; the sketched artist twirls a pencil; the sketcher uses charcoal."),
    ("phone-chef", "She filmed the chef with the new phone.",
     "Ha filmato lo chef usando il telefono nuovo.",
     "Ha filmato lo chef che aveva il telefono nuovo.",
     "instrument", "A kitchen demo; a woman records a chef with her brand-new phone."),
    ("telescope-dancer", "He watched the dancer with the telescope.",
     "Ha osservato la ballerina usando il telescopio.",
     "Ha osservato la ballerina che aveva il telescopio.",
     "instrument", "A rooftop; a man peers through a telescope toward a distant stage."),
    ("chalk-teacher", "She drew the teacher with the chalk.",
     "Ha disegnato l'insegnante usando il gesso.",
     "Ha disegnato l'insegnante che aveva il gesso.",
     "possessor", "A classroom; the drawn teacher holds chalk; the artist uses a marker."),
    ("microphone-speaker", "He recorded the speaker with the microphone.",
     "Ha registrato l'oratore usando il microfono.",
     "Ha registrato l'oratore che aveva il microfono.",
     "instrument", "A conference row; a technician points a shotgun microphone at a speaker."),
]

# Distributive vs collective readings of "a(n) X" with plural subjects.

SYN_DISTRIBUTIVE = [
    ("suitcase", "Paul and Mark carried a heavy suitcase to the station.",
     "Paolo e Marco hanno portato una valigia pesante alla stazione insieme.",
     "Paolo e Marco hanno portato una valigia pesante alla stazione ciascuno.",
     "collective", "Two men share the weight of one large suitcase."),
    ("report", "The two nurses prepared a report for the night shift.",
     "Le due infermiere hanno preparato una relazione per il turno di notte insieme.",
     "Le due infermiere hanno preparato una relazione per il turno di notte ciascuna.",
     "distributive", "A nurses' station; each nurse types her own report."),
    ("present", "Anna and Luca bought a present for their teacher.",
     "Anna e Luca hanno comprato un regalo per la loro maestra insieme.",
     "Anna e Luca hanno comprato un regalo per la loro maestra ciascuno.",
     "collective", "A gift shop; a couple pays together for one wrapped box."),
    ("picture", "The twins drew a picture yesterday.",
     "I gemelli hanno disegnato un disegno insieme.",
     "I gemelli hanno disegnato un disegno ciascuno.",
     "distributive", "A children's table; two twins, two separate drawings."),
    ("contract", "The partners signed a contract today.",
     "I soci hanno firmato un contratto insieme.",
     "I soci hanno firmato un contratto ciascuno.",
     "collective", "A boardroom; both partners sign the same single contract."),
    ("model", "The students built a small model.",
     "Gli studenti hanno costruito un modellino insieme.",
     "Gli studenti hanno costruito un modellino ciascuno.",
     "distributive", "A classroom; every student glues a separate small model."),
]

# Comparative ellipsis: object reading vs subject reading.

SYN_COMPARATIVE = [
    ("rome-sister", "She misses Rome more than her sister.",
     "Le manca Roma più di quanto le manchi sua sorella.", "di quanto le manchi",
     "Roma le manca più che a sua sorella.", "più che a",
     "subject", "Two sisters video-call; only one has moved away from Rome."),
    ("data-boss", "He trusts the data more than his boss.",
     "Si fida dei dati più di quanto si fidi del suo capo.", "di quanto si fidi",
     "Si fida dei dati più di quanto lo faccia il suo capo.", "lo faccia",
     "object", "An analyst frowns at his boss while pointing at a dashboard."),
    ("mother-father", "He calls his mother more than his father.",
     "Chiama sua madre più di quanto chiami suo padre.", "di quanto chiami",
     "Chiama sua madre più di quanto lo faccia suo padre.", "lo faccia",
     "object", "A phone log on screen: many calls to Mom, few to Dad."),
    ("clients-colleague", "She emails the clients more than her colleague.",
     "Scrive ai clienti più di quanto scriva al suo collega.", "di quanto scriva",
     "Scrive ai clienti più di quanto lo faccia il suo collega.", "lo faccia",
     "subject", "Two desks; one inbox overflowing with client threads, one quiet."),
]

# Relative-clause attachment disambiguated by verb number in the target.

SYN_RELATIVE = [
    ("assistant-directors", "The assistant of the directors who arrived late apologized.",
     "L'assistente dei direttori che è arrivato in ritardo si è scusato.", "è arrivato",
     "L'assistente dei direttori che sono arrivati in ritardo si è scusato.", "sono arrivati",
     "high", "One assistant hurries in late; the directors are already seated."),
    ("agent-actors", "The agent of the actors who arrived first spoke briefly.",
     "L'agente degli attori che è arrivato per primo ha parlato brevemente.", "è arrivato",
     "L'agente degli attori che sono arrivati per primi ha parlato brevemente.", "sono arrivati",
     "low", "A premiere; the actors arrive first, their agent trails behind."),
    ("coach-players", "The coach of the players who protested stayed calm.",
     "L'allenatore dei giocatori che ha protestato è rimasto calmo.", "ha protestato",
     "L'allenatore dei giocatori che hanno protestato è rimasto calmo.", "hanno protestato",
     "low", "A pitch; players argue with the referee while their coach stands calm."),
    ("manager-clerks", "The manager of the clerks who resigned surprised everyone.",
     "Il responsabile degli impiegati che si è dimesso ha sorpreso tutti.", "si è dimesso",
     "Il responsabile degli impiegati che si sono dimessi ha sorpreso tutti.", "si sono dimessi",
     "high", "An office farewell; the manager hands over his own resignation letter."),
]


# --------------------------------------------------------------------------
# Assembly


def _lexical_records() -> list[dict]:
    records = []
    for idx, entry in enumerate(LEXICAL_IT_EN + LEXICAL_EN_IT, start=1):
        slug, text, senses, intended, caption = entry[:5]
        flags = entry[5] if len(entry) > 5 else {}
        it_en = idx <= len(LEXICAL_IT_EN)
        records.append(
            {
                "id": f"lex-{idx:03d}-{slug}",
                "trigger": "lexical",
                "source_lang": "it" if it_en else "en",
                "target_lang": "en" if it_en else "it",
                "source_text": text,
                "senses": [
                    {"label": lab, "description": desc, "markers": mk, "gold_reference": gold}
                    for lab, desc, mk, gold in senses
                ],
                "intended_sense": intended,
                "caption_gold": caption,
                **flags,
            }
        )
    return records


def _gender_records() -> list[dict]:
    records = []
    for idx, (slug, text, mk_m, mk_f, gold_m, gold_f, intended, caption) in enumerate(
        GENDER_ITEMS, start=1
    ):
        records.append(
            {
                "id": f"gen-{idx:03d}-{slug}",
                "trigger": "gender",
                "source_lang": "en",
                "target_lang": "it",
                "source_text": text,
                "senses": [
                    {
                        "label": "male",
                        "description": "referent is male",
                        "markers": mk_m,
                        "gold_reference": gold_m,
                    },
                    {
                        "label": "female",
                        "description": "referent is female",
                        "markers": mk_f,
                        "gold_reference": gold_f,
                    },
                ],
                "intended_sense": "female" if intended == "f" else "male",
                "caption_gold": caption,
            }
        )
    return records


def _syntactic_records() -> list[dict]:
    records = []
    idx = 0

    for slug, text, gold_first, mk_first, gold_both, mk_both, intended, caption in SYN_ADJ_SCOPE:
        idx += 1
        records.append(
            {
                "id": f"syn-{idx:03d}-{slug}",
                "trigger": "syntactic",
                "source_lang": "en",
                "target_lang": "it",
                "source_text": text,
                "senses": [
                    {
                        "label": "first_only",
                        "description": "adjective modifies the first noun only",
                        "markers": [mk_first],
                        "gold_reference": gold_first,
                    },
                    {
                        "label": "both",
                        "description": "adjective modifies both nouns",
                        "markers": [mk_both],
                        "gold_reference": gold_both,
                    },
                ],
                "intended_sense": intended,
                "caption_gold": caption,
            }
        )

    for slug, text, gold_instr, gold_poss, intended, caption in SYN_PP_ATTACH:
        idx += 1
        records.append(
            {
                "id": f"syn-{idx:03d}-{slug}",
                "trigger": "syntactic",
                "source_lang": "en",
                "target_lang": "it",
                "source_text": text,
                "senses": [
                    {
                        "label": "instrument",
                        "description": "the with-phrase is the instrument of the verb",
                        "markers": ["usando"],
                        "gold_reference": gold_instr,
                    },
                    {
                        "label": "possessor",
                        "description": "the with-phrase modifies the object noun",
                        "markers": ["che aveva"],
                        "gold_reference": gold_poss,
                    },
                ],
                "intended_sense": intended,
                "caption_gold": caption,
            }
        )

    for slug, text, gold_coll, gold_dist, intended, caption in SYN_DISTRIBUTIVE:
        idx += 1
        records.append(
            {
                "id": f"syn-{idx:03d}-{slug}",
                "trigger": "syntactic",
                "source_lang": "en",
                "target_lang": "it",
                "source_text": text,
                "senses": [
                    {
                        "label": "collective",
                        "description": "one object shared by all subjects",
                        "markers": ["insieme"],
                        "gold_reference": gold_coll,
                    },
                    {
                        "label": "distributive",
                        "description": "one object per subject",
                        "markers": ["ciascuno", "ciascuna"],
                        "gold_reference": gold_dist,
                    },
                ],
                "intended_sense": intended,
                "caption_gold": caption,
            }
        )

    for slug, text, gold_obj, mk_obj, gold_subj, mk_subj, intended, caption in SYN_COMPARATIVE:
        idx += 1
        records.append(
            {
                "id": f"syn-{idx:03d}-{slug}",
                "trigger": "syntactic",
                "source_lang": "en",
                "target_lang": "it",
                "source_text": text,
                "senses": [
                    {
                        "label": "object",
                        "description": "comparison with a second object of the same subject",
                        "markers": [mk_obj],
                        "gold_reference": gold_obj,
                    },
                    {
                        "label": "subject",
                        "description": "comparison with a second subject",
                        "markers": [mk_subj],
                        "gold_reference": gold_subj,
                    },
                ],
                "intended_sense": intended,
                "caption_gold": caption,
            }
        )

    for slug, text, gold_high, mk_high, gold_low, mk_low, intended, caption in SYN_RELATIVE:
        idx += 1
        records.append(
            {
                "id": f"syn-{idx:03d}-{slug}",
                "trigger": "syntactic",
                "source_lang": "en",
                "target_lang": "it",
                "source_text": text,
                "senses": [
                    {
                        "label": "high",
                        "description": "relative clause attaches to the head noun (singular)",
                        "markers": [mk_high],
                        "gold_reference": gold_high,
                    },
                    {
                        "label": "low",
                        "description": "relative clause attaches to the embedded noun (plural)",
                        "markers": [mk_low],
                        "gold_reference": gold_low,
                    },
                ],
                "intended_sense": intended,
                "caption_gold": caption,
            }
        )

    return records


# --------------------------------------------------------------------------
# Images: deterministic little scene cards rendering the gold caption.


def _render_image(item_id: str, caption: str, trigger: str, path: Path) -> None:
    digest = hashlib.sha256(item_id.encode()).digest()
    bg = (96 + digest[0] % 128, 96 + digest[1] % 128, 96 + digest[2] % 128)
    accent = {"lexical": (255, 214, 90), "gender": (120, 200, 255), "syntactic": (160, 255, 160)}[trigger]

    img = Image.new("RGB", (240, 180), bg)
    draw = ImageDraw.Draw(img)
    draw.rectangle([0, 0, 239, 14], fill=accent)
    # A few deterministic "scene" blobs so frames differ visually per item.
    for i in range(4):
        x = 12 + (digest[3 + i] % 180)
        y = 28 + (digest[7 + i] % 110)
        r = 10 + digest[11 + i] % 22
        shade = tuple(min(255, c + 40 + digest[15 + i] % 60) for c in bg)
        draw.ellipse([x, y, x + r, y + r], fill=shade)
    for li, line in enumerate(textwrap.wrap(caption, width=40)[:6]):
        draw.text((8, 96 + 13 * li), line, fill=(20, 20, 20))
    draw.text((8, 3), item_id, fill=(30, 30, 30))
    img.save(path, format="PNG")


# --------------------------------------------------------------------------
# Self-checks


def _check(records: list[dict]) -> None:
    problems = []
    ids = set()
    for rec in records:
        rec = {**rec, "image_path": f"images/{rec['id']}.png"}
        item = CorpusItem.from_dict(rec)
        if item.id in ids:
            problems.append(f"duplicate id {item.id}")
        ids.add(item.id)

        n = token_count(item.source_text)
        if not item.relaxed_length and not (5 <= n <= 13):
            problems.append(f"{item.id}: {n} tokens: {item.source_text!r}")

        marker_owner = {}
        for sense in item.senses:
            for m in sense.markers:
                key = m.casefold()
                if key in marker_owner and marker_owner[key] != sense.label:
                    problems.append(f"{item.id}: marker {m!r} in two senses")
                marker_owner[key] = sense.label

        # Every gold reference must judge as its own sense.
        for sense in item.senses:
            probe = CorpusItem.from_dict({**rec, "intended_sense": sense.label})
            verdict = judge(sense.gold_reference, probe).verdict
            if verdict is not Verdict.CORRECT:
                problems.append(
                    f"{item.id}: gold for sense {sense.label!r} judges {verdict.value}: "
                    f"{sense.gold_reference!r}"
                )

    if problems:
        for p in problems:
            print("CHECK FAILED:", p)
        raise SystemExit(1)


def main() -> None:
    records = _lexical_records() + _gender_records() + _syntactic_records()
    counts = {}
    for rec in records:
        counts[rec["trigger"]] = counts.get(rec["trigger"], 0) + 1
    assert counts == {"lexical": 40, "gender": 40, "syntactic": 40}, counts

    _check(records)

    IMAGE_DIR.mkdir(parents=True, exist_ok=True)
    lines = []
    for rec in records:
        image_rel = f"images/{rec['id']}.png"
        rec_out = dict(rec)
        rec_out["image_path"] = image_rel
        _render_image(rec["id"], rec["caption_gold"], rec["trigger"], IMAGE_DIR / f"{rec['id']}.png")
        lines.append(json.dumps(rec_out, ensure_ascii=False))

    manifest = DATA_DIR / "corpus.jsonl"
    manifest.write_text("\n".join(lines) + "\n", encoding="utf-8")
    print(f"wrote {len(records)} items to {manifest}")
    token_counts = [token_count(r["source_text"]) for r in records]
    print(f"token range: [{min(token_counts)}, {max(token_counts)}]")


if __name__ == "__main__":
    main()
