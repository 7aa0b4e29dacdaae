// Copyright 2026 The SocialRank Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cctype>
#include <string>
#include <utility>
#include <vector>

#include "socialrank/graphgen.hpp"

namespace socialrank {

namespace {

struct CategoryListing {
  const char* name;
  const char* slug;
  std::vector<const char*> members;  // descending popularity
};

const std::vector<CategoryListing>& listings() {
  static const std::vector<CategoryListing> kListings = {
      {"Musical artists", "music",
       {"Justin Bieber", "Katy Perry", "Rihanna", "Taylor Swift", "Ariana Grande", "Justin Timberlake",
        "Selena Gomez", "Britney Spears", "Miley Cyrus", "Wiz Khalifa", "Kanye West", "Eminem", "Nicki Minaj",
        "Snoop Dogg", "John Legend", "Kendrick Lamar", "The Weeknd", "Cher", "Megan Thee Stallion",
        "Bette Midler"}},
      {"News outlets", "news",
       {"CNN Breaking News", "The New York Times", "SportsCenter", "BBC News (World)", "The Economist", "Reuters",
        "Fox News", "The Washington Post", "ABC News", "The Associated Press", "HuffPost", "The Onion",
        "Guardian", "Bleacher Report", "NBC News", "USA Today", "MSNBC", "NY Post", "Maddow Blog",
        "One America News"}},
      {"Comedians", "comedian",
       {"Ellen DeGeneres", "Jimmy Fallon", "Daniel Tosh", "Stephen Colbert", "Ricky Gervais", "Sarah Silverman",
        "Jimmy Kimmel", "Russell Brand", "Bill Maher", "Trevor Noah", "Joe Rogan", "Chris Rock", "Seth Meyers",
        "Amy Schumer", "Jerry Seinfeld", "Jim Gaffigan", "David Spade", "Billy Eichner", "Brian Brushwood",
        "Dave Chappelle"}},
      {"Politicians", "politician",
       {"Barack Obama", "Hillary Clinton", "Michelle Obama", "Bernie Sanders", "Bill Clinton",
        "Alexandria Ocasio-Cortez", "Elizabeth Warren", "Joe Biden", "Nancy Pelosi", "Kamala Harris",
        "Chuck Schumer", "Pete Buttigieg", "Beto O'Rourke", "Preet Bharara", "Ted Lieu", "Eric Swalwell",
        "Stacey Abrams", "Ron DeSantis"}},
      {"TV stations", "tvstation",
       {"CNN", "ESPN", "BBC News (World)", "Fox News", "MTV", "E! News", "Discovery", "Food Network", "NBA TV",
        "NFL Network", "E! Entertainment", "The Weather Channel", "CNBC", "MSNBC", "NBC", "CSPAN",
        "Comedy Central", "One America News", "BlazeTV"}},
      {"Actors", "actor",
       {"Jim Carrey", "Tom Hanks", "Robert Downey Jr", "Chris Evans", "Seth Rogen", "Chris Pratt",
        "Anna Kendrick", "Chris Hemsworth", "Mark Ruffalo", "Steve Carell", "John Cleese", "Tom Holland",
        "Patrick Stewart", "Kumail Nanjiani", "James Woods", "LeVar Burton", "Jordan Peele", "Steven Crowder",
        "Terrence K Williams", "Ron Perlman"}},
      {"TV shows", "tvshow",
       {"The Daily Show", "The Tonight Show", "Good Morning America", "South Park", "Stranger Things", "NBA 2K",
        "Saturday Night Live", "Game Grumps", "SpongeBob", "Mark R. Levin", "Entertainment Tonight",
        "World News Tonight", "FOX & friends", "Maddow Blog", "PBS NewsHour", "60 Minutes", "NBC Nightly News",
        "Animal Crossing", "Morning Joe"}},
      {"Sports teams", "sports",
       {"Golden State Warriors", "Miami HEAT", "FaZe Clan", "Chicago Bulls", "Boston Celtics", "New York Yankees",
        "Cleveland Cavaliers", "Denver Broncos", "Chicago Cubs", "Green Bay Packers", "San Francisco 49ers",
        "Los Angeles Dodgers", "New York Knicks", "Red Sox", "Chicago Bears", "Las Vegas Raiders",
        "Kansas City Chiefs", "Atlanta Braves", "New York Jets", "New York Mets"}},
      {"Fashion", "fashion",
       {"H&M", "Louis Vuitton", "Versace", "Lacoste", "Under Armour", "Balenciaga", "Levi's", "Hugo Boss",
        "Nautica", "Stussy", "Fashion Nova", "Juicy Couture", "Ann Taylor", "Tillys", "Nine West",
        "True Religion", "Henri Bendel", "prAna", "Hanes", "Legendary Whitetails"}},
      {"Journalists", "journalist",
       {"Ezra Klein", "Chris Hayes", "Joy Reid", "Christopher Cuomo", "Jim Acosta", "Maggie Haberman",
        "David Corn", "David Fahrenthold", "Daniel Dale", "Katy Tur", "Ari Melber", "April Ryan", "Robert Costa",
        "Stephanie Ruhle", "Philip Rucker", "Kaitlan Collins", "Aaron Rupar", "Benny Johnson", "Jonathan Swan",
        "Elie Mystal"}},
      {"TV hosts", "tvhost",
       {"Laura Ingraham", "Lou Dobbs", "Adam Richman", "Buddy Valastro", "Steve Inskeep", "Guy Adami",
        "Jeff Zeleny", "Cari Champion", "Jenna Compono", "Abby Huntsman", "Nicole Curtis", "Mel Robbins",
        "Clayton Morris", "Ty Pennington", "Kacie McDonnell", "Gio Benitez", "Pat Kiernan", "Matt Gutman",
        "Ziya Tong", "Lulu Miller"}},
      {"Films", "film",
       {"Divergent", "What Ted Said", "Sense8", "Star Trek", "Disney's Frozen 2", "Paddington", "Toy Story 4",
        "La La Land", "Cowspiracy", "The Hateful Eight", "An Open Secret", "Sausage Party", "Demon House",
        "Blade Runner", "The Peanuts Movie", "History Center", "Hidden Figures"}},
      {"Food chains", "food",
       {"McDonalds", "Chick-fil-A", "Chipotle", "KFC", "Whataburger", "Dairy Queen", "Buffalo Wild Wings",
        "Applebees", "Sonic Drive-In", "Denny's Diner", "Chilis", "Steak 'n Shake", "Raising Cane's",
        "Jack in the Box", "TGIFridays", "Cracker Barrel", "Hooters", "White Castle", "Texas Roadhouse",
        "Zaxby's"}},
      {"Car makers", "car",
       {"Ford", "Chevrolet", "Jeep", "Porsche", "Lamborghini", "Toyota", "Mercedes Benz", "Audi", "Honda", "BMW",
        "Subaru", "Rivian", "Ferrari", "Rolls-Royce", "Jaguar", "Kia", "Bugatti", "Volvo", "Nissan"}},
  };
  return kListings;
}

std::string slugify(std::string_view name) {
  std::string out;
  bool pending_sep = false;
  for (unsigned char c : name) {
    if (std::isalnum(c)) {
      if (pending_sep && !out.empty()) out.push_back('_');
      out.push_back(static_cast<char>(std::tolower(c)));
      pending_sep = false;
    } else if (c != '\'') {
      pending_sep = true;
    }
  }
  return out;
}

}  // namespace

Catalog reference_catalog() {
  constexpr std::size_t kSlateSize = 20;
  std::vector<std::string> categories;
  std::vector<Entity> entities;
  for (const auto& listing : listings()) {
    categories.emplace_back(listing.name);
    for (std::size_t i = 0; i < kSlateSize; ++i) {
      Entity e;
      e.category = listing.name;
      if (i < listing.members.size()) {
        e.display_name = listing.members[i];
        e.id = std::string(listing.slug) + "." + slugify(e.display_name);
      } else {
        // Some published slates list fewer than 20 accounts; pad with placeholders.
        e.display_name = std::string(listing.name) + " candidate " + std::to_string(i + 1);
        e.id = std::string(listing.slug) + ".candidate_" + std::to_string(i + 1);
      }
      entities.push_back(std::move(e));
    }
  }
  return Catalog(std::move(categories), std::move(entities));
}

}  // namespace socialrank
