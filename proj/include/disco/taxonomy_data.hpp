#pragma once

#include <string_view>

namespace disco {

// Default two-level topic taxonomy, 138 leaves. Same document as data/taxonomy.json.
inline constexpr std::string_view kDefaultTaxonomyJson = R"__({
  "parents": {
    "Room": [
      "cleanliness",
      "size",
      "layout",
      "bed_comfort",
      "mattress_quality",
      "pillow_quality",
      "bathroom_quality",
      "shower_water_pressure",
      "toiletries",
      "noise_levels",
      "soundproofing",
      "temperature_control",
      "air_conditioning",
      "heating",
      "views",
      "in_room_facilities",
      "lighting",
      "furniture_condition",
      "balcony_or_terrace"
    ],
    "Cleanliness": [
      "overall_hotel_cleanliness",
      "smells",
      "linens_freshness",
      "towels_freshness",
      "maintenance",
      "pest_control"
    ],
    "Service": [
      "staff_friendliness",
      "staff_helpfulness",
      "professionalism",
      "multilingual_staff",
      "concierge_service",
      "housekeeping_service",
      "responsiveness_to_requests"
    ],
    "Food_Beverage": [
      "breakfast_quality",
      "breakfast_variety",
      "restaurant_quality",
      "restaurant_price",
      "room_service",
      "bar_quality",
      "dietary_options",
      "coffee_quality",
      "local_cuisine_availability"
    ],
    "Location": [
      "proximity_city_center",
      "proximity_attractions",
      "proximity_public_transport",
      "proximity_airport",
      "safety_area",
      "neighborhood_vibrancy",
      "proximity_restaurants",
      "proximity_shops",
      "proximity_nightlife",
      "proximity_sea",
      "proximity_beach",
      "proximity_ski_resort",
      "proximity_hiking_trails",
      "scenic_surroundings",
      "mountain_views",
      "lake_views"
    ],
    "Value": [
      "value_for_money",
      "unexpected_fees",
      "discounts_offers",
      "resort_fees",
      "parking_fees"
    ],
    "Pool": [
      "pool_cleanliness",
      "pool_size",
      "pool_temperature",
      "pool_opening_hours",
      "sunbeds_availability",
      "pool_bar"
    ],
    "Gym": [
      "equipment_quality",
      "equipment_variety",
      "gym_cleanliness",
      "gym_size",
      "opening_hours"
    ],
    "Spa": [
      "spa_quality",
      "spa_variety",
      "massage_services",
      "wellness_treatments",
      "sauna",
      "steam_room"
    ],
    "Business": [
      "business_center_quality",
      "meeting_room_facilities",
      "conference_services",
      "printing_services",
      "wifi_reliability"
    ],
    "WiFi": [
      "speed",
      "reliability",
      "coverage",
      "ease_of_access"
    ],
    "Parking": [
      "availability",
      "price",
      "security",
      "proximity_to_hotel"
    ],
    "Accessibility": [
      "wheelchair_accessibility",
      "elevator_availability",
      "accessible_rooms",
      "staff_assistance"
    ],
    "Family": [
      "family_room_availability",
      "crib_availability",
      "play_area",
      "babysitting_service",
      "kids_club",
      "activities_for_families"
    ],
    "Pets": [
      "pet_policy",
      "pet_fees",
      "pet_amenities",
      "dog_friendly_areas"
    ],
    "CheckIn_CheckOut": [
      "checkin_speed",
      "flexibility",
      "early_checkin",
      "late_checkout",
      "ease_booking_payment",
      "keyless_entry"
    ],
    "Transport": [
      "airport_transfer",
      "shuttle_service",
      "taxi_availability",
      "ride_share_access",
      "bike_rental",
      "ski_shuttle"
    ],
    "Ski": [
      "proximity_ski_lift",
      "ski_storage",
      "ski_rental",
      "ski_in_ski_out",
      "drying_room",
      "ski_pass_services"
    ],
    "Entertainment": [
      "live_music",
      "evening_shows",
      "casino",
      "karaoke",
      "themed_events"
    ],
    "Sustainability": [
      "eco_friendly_practices",
      "recycling_program",
      "energy_efficiency",
      "water_saving_measures"
    ],
    "Other": [
      "overall_atmosphere",
      "design_style",
      "renovation_status",
      "special_experiences",
      "holiday_decorations"
    ]
  }
})__";

}  // namespace disco
