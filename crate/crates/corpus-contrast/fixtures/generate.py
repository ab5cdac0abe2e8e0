#!/usr/bin/env python3
"""Regenerates the bundled fixture corpus. Deterministic; run from this directory."""
import json
import random
from pathlib import Path

rng = random.Random(20240817)
HERE = Path(__file__).parent

MAKES = ["tesla", "nissan", "chevrolet", "toyota", "ford", "bmw"]
MODELS = {
    "tesla": "model 3", "nissan": "leaf", "chevrolet": "bolt",
    "toyota": "prius prime", "ford": "mustang mach-e", "bmw": "i3",
}

POS_WORDS = ["excellent", "reliable", "love", "impressive", "smooth"]
NEG_WORDS = ["terrible", "unreliable", "hate", "disappointing", "faulty"]

POS_SENTENCES = [
    "the {make} {model} has excellent range for daily commuting",
    "owners love the smooth acceleration of the {make} {model}",
    "charging at home is reliable and cheap compared with gasoline",
    "an impressive battery warranty makes the {make} {model} an easy pick",
    "the regenerative braking feels smooth once you adjust your driving",
    "resale values stay excellent because demand keeps climbing",
    "road trip charging was reliable along the entire interstate corridor",
    "the infotainment update was impressive and fixed every earlier complaint",
    "winter range loss was smaller than expected which owners love",
    "service visits have been rare and the dealership support is excellent",
    "the quiet cabin is impressive even at highway speed",
    "tax credits made the lease price reliable and predictable",
]
NEG_SENTENCES = [
    "the {make} {model} suffers from terrible cold weather range loss",
    "owners hate the unreliable public charging stations in rural areas",
    "a faulty onboard charger left me stranded twice this winter",
    "the touchscreen interface is disappointing and distracts from driving",
    "battery degradation after five years has been disappointing for early adopters",
    "repair wait times are terrible because parts ship from overseas",
    "the mobile app connection is unreliable and drops every session",
    "panel gaps on the {make} {model} look faulty from the factory",
    "depreciation has been terrible compared with hybrid alternatives",
    "i hate how the navigation routes through broken charging stations",
    "the heat pump proved faulty below freezing temperatures",
    "software recalls keep arriving which is disappointing for a premium price",
]
NEU_SENTENCES = [
    "the {make} {model} seats five adults with folding rear seats",
    "curb weight comes in near two metric tons with the larger battery",
    "the onboard charger accepts eleven kilowatts on three phase power",
    "dealers report steady inventory of the {make} {model} this quarter",
    "the battery pack sits under the floor between the axles",
    "federal incentives depend on final assembly location and battery sourcing",
    "the {make} {model} ships with a heat pump in cold market trims",
    "charging connectors vary by region between ccs and proprietary plugs",
    "production moved to a second plant in the southern region",
    "the warranty covers the battery pack for eight years",
    "over the air updates arrive roughly once a month",
    "the {make} {model} tows up to nine hundred kilograms",
    "regenerative braking strength is adjustable through the settings menu",
    "the base trim omits the larger touchscreen and premium audio",
    "fleet operators ordered several hundred units for delivery routes",
    "the navigation system plans charging stops along longer routes",
    "a seven seat variant of the {make} {model} arrives next year",
    "residual values are set quarterly by the leasing arm",
    "the charge port sits on the rear quarter panel",
    "cabin preconditioning can run while the car is plugged in",
]

NEWS_LEAD = [
    "analysts report that electric vehicle adoption accelerated this quarter",
    "a new study of the electric vehicle market was published today",
    "regulators announced updated incentives for electric vehicle buyers",
    "the electric vehicle charging network expanded into two more states",
]

def make_sentences(polarity, make, k, pool_state):
    if polarity > 0:
        pool = POS_SENTENCES
    elif polarity < 0:
        pool = NEG_SENTENCES
    else:
        pool = NEU_SENTENCES
    # avoid repeating a sentence within the same thread
    avail = [s for s in pool if s not in pool_state]
    if len(avail) < k:
        raise RuntimeError("sentence pool exhausted; enlarge the pool")
    chosen = rng.sample(avail, k)
    pool_state.update(chosen)
    out = []
    for s in chosen:
        out.append(s.format(make=make, model=MODELS[make]))
    # one neutral filler to vary length
    filler = rng.choice(NEU_SENTENCES)
    if filler not in pool_state:
        pool_state.add(filler)
        out.append(filler.format(make=make, model=MODELS[make]))
    return out

def rand_date(year_lo=2017, year_hi=2021):
    y = rng.randint(year_lo, year_hi)
    m = rng.randint(1, 12)
    d = rng.randint(1, 28)
    return f"{y:04d}-{m:02d}-{d:02d}"

news = []
news_polarity = {}
for i in range(110):
    polarity = 1 if i % 5 < 3 else -1  # 66 positive, 44 negative
    make = MAKES[i % len(MAKES)]
    state = set()
    body = [rng.choice(NEWS_LEAD)] + make_sentences(polarity, make, 3, state)
    doc = {
        "id": f"news-{i:04d}",
        "corpus": "news",
        "text": ". ".join(body) + ".",
        "timestamp": rand_date(),
        "author": f"desk-{i % 9}",
    }
    news.append(doc)
    news_polarity[doc["id"]] = polarity

comments = []
comment_polarity = {}
cid = 0
for t in range(30):
    thread_id = f"thread-{t:03d}"
    make = MAKES[t % len(MAKES)]
    n_posts = rng.randint(3, 6)
    thread_docs = []
    bodies = {}
    state = set()
    for p in range(n_posts):
        polarity = rng.choice([1, -1, -1, -1, 0]) if p else (1 if t % 2 == 0 else -1)
        body_sents = make_sentences(polarity, make, 2, state)
        body = ". ".join(body_sents) + "."
        if p > 0:
            # quote a 6-12 token span from the OP or the immediate predecessor
            src = thread_docs[0] if rng.random() < 0.5 else thread_docs[-1]
            toks = bodies[src["id"]].split()
            span_len = min(len(toks), rng.randint(6, 12))
            start = rng.randrange(0, len(toks) - span_len + 1)
            quote = " ".join(toks[start:start + span_len])
            body = quote + " " + body
        doc = {
            "id": f"cmt-{cid:04d}",
            "corpus": "comments",
            "text": body,
            "timestamp": rand_date(2018, 2021),
            "author": f"user-{rng.randint(0, 40)}",
            "thread_id": thread_id,
        }
        if p > 0:
            doc["parent_id"] = thread_docs[-1]["id"]
        bodies[doc["id"]] = ". ".join(body_sents) + "."
        thread_docs.append(doc)
        comment_polarity[doc["id"]] = polarity
        cid += 1
    comments.extend(thread_docs)

# standalone comments with no thread
for i in range(20):
    polarity = rng.choice([1, -1, -1, -1])
    make = MAKES[i % len(MAKES)]
    state = set()
    doc = {
        "id": f"cmt-{cid:04d}",
        "corpus": "comments",
        "text": ". ".join(make_sentences(polarity, make, 3, state)) + ".",
        "timestamp": rand_date(2018, 2021),
        "author": f"user-{rng.randint(0, 40)}",
    }
    comments.append(doc)
    comment_polarity[doc["id"]] = polarity
    cid += 1

def write_jsonl(path, rows):
    with open(path, "w") as f:
        for r in rows:
            f.write(json.dumps(r, sort_keys=True) + "\n")

write_jsonl(HERE / "news.jsonl", news)
write_jsonl(HERE / "comments.jsonl", comments)

# gold: 60 comment docs, 26 positive and 34 negative
pos_ids = [i for i, p in comment_polarity.items() if p > 0]
neg_ids = [i for i, p in comment_polarity.items() if p < 0]
rng.shuffle(pos_ids)
rng.shuffle(neg_ids)
gold_ids = pos_ids[:26] + neg_ids[:34]
gold = [
    {"id": i, "label": comment_polarity[i], "annotators": 3, "is_gold": True}
    for i in sorted(gold_ids)
]
write_jsonl(HERE / "labels_gold.jsonl", gold)

# training labels: every doc in both corpora, including neutrals
all_polarity = {}
all_polarity.update(news_polarity)
all_polarity.update(comment_polarity)
labels = [
    {"id": i, "label": p, "annotators": 1}
    for i, p in sorted(all_polarity.items())
]
write_jsonl(HERE / "labels_train.jsonl", labels)

(HERE / "seeds_positive.txt").write_text(
    "# positive pole\n" + "\n".join(POS_WORDS) + "\n")
(HERE / "seeds_negative.txt").write_text(
    "# negative pole\n" + "\n".join(NEG_WORDS) + "\n")
(HERE / "gazetteer.txt").write_text("\n".join(MAKES) + "\n")
(HERE / "stoplist_extra.txt").write_text(
    "# domain words carrying no contrast\nvehicle\nvehicles\nelectric\n")
print("news", len(news), "comments", len(comments),
      "gold", len(gold), "labels", len(labels))
